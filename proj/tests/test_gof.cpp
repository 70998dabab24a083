#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "erl/distribution.hpp"
#include "erl/error.hpp"
#include "erl/estimation.hpp"
#include "erl/gof.hpp"
#include "edf_oracles.hpp"

using namespace erl;
using namespace erl::gof;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double uniform_cdf(double x) { return std::clamp(x, 0.0, 1.0); }

std::vector<double> uniform_data(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("sample skewness and kurtosis worked values", "[gof]") {
  CHECK_THAT(sample_skewness(Dataset({-1.0, 0.0, 1.0})), WithinAbs(0.0, 1e-12));
  CHECK_THAT(sample_skewness(Dataset({0.0, 0.0, 3.0})), WithinAbs(0.7071067812, 1e-10));
  CHECK_THAT(sample_kurtosis(Dataset({0.0, 0.0, 3.0})), WithinAbs(1.5, 1e-12));
  CHECK_THROWS_AS(sample_skewness(Dataset({1.0})), UndefinedError);
  CHECK_THROWS_AS(sample_kurtosis(Dataset({2.0, 2.0, 2.0})), UndefinedError);
}

TEST_CASE("sample kurtosis of Gaussian draws is about 3", "[gof]") {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(1000000);
  for (double& x : v) x = normal(rng);
  const Dataset d(v);
  CHECK_THAT(sample_kurtosis(d), WithinAbs(3.0, 0.03));
  CHECK_THAT(sample_kurtosis(d) - 3.0, WithinAbs(0.0, 0.03));
  CHECK_THAT(central_moment(d, 4) / std::pow(central_moment(d, 2), 2), WithinRel(sample_kurtosis(d), 1e-14));
}

TEST_CASE("sample shape agrees with the law on 10^6 draws", "[gof]") {
  const ErlParams p(2.0, 1.5, 1.0, 1.0, 1.0);
  const Dataset d(sample(1000000, p, 72));
  CHECK_THAT(sample_skewness(d), WithinRel(skewness(p), 0.05));
  CHECK_THAT(sample_kurtosis(d) - 3.0, WithinRel(kurtosis(p), 0.05));
}

TEST_CASE("single point at the median", "[gof]") {
  const Dataset one({0.5});
  CHECK_THAT(ks_stat(one, uniform_cdf), WithinAbs(0.5, 1e-10));
  CHECK_THAT(cvm_stat(one, uniform_cdf), WithinAbs(1.0 / 12.0, 1e-10));
  const AndersonDarling ad = ad_stat(one, uniform_cdf);
  CHECK_THAT(ad.statistic, WithinAbs(-1.0 + 2.0 * std::log(2.0), 1e-10));
  CHECK_FALSE(ad.clamped);
}

TEST_CASE("data at the optimal positions", "[gof]") {
  for (const std::size_t n : {3u, 10u, 40u}) {
    std::vector<double> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back((i - 0.5) / n);
    const Dataset d(v);
    CHECK_THAT(ks_stat(d, uniform_cdf), WithinAbs(0.5 / n, 1e-12));
    CHECK_THAT(cvm_stat(d, uniform_cdf), WithinAbs(1.0 / (12.0 * n), 1e-12));
  }
  double prev = INFINITY;
  for (const std::size_t n : {2u, 5u, 20u, 100u}) {
    std::vector<double> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back((i - 0.5) / n);
    const double a = ad_stat(Dataset(v), uniform_cdf).statistic;
    CHECK(a > 0.0);
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("EDF statistics match brute-force oracles", "[gof][property]") {
  const ErlParams p(1.4, 0.9, 1.0, 1.3, 0.7);
  const Cdf F = [&](double x) { return cdf(x, p); };
  for (const std::size_t n : {1u, 5u, 50u}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const std::vector<double> xs = sample(n, p, 100 * n + seed);
      const Dataset d(xs);
      INFO("n=" << n << " seed=" << seed);
      CHECK_THAT(ks_stat(d, F), WithinAbs(edf_oracles::ks_grid(xs, F, -p.theta(), quantile(0.9999, p)), 1e-6));
      CHECK_THAT(cvm_stat(d, F), WithinAbs(edf_oracles::weighted_integral(xs, F, false), 1e-6));
      CHECK_THAT(ad_stat(d, F).statistic, WithinAbs(edf_oracles::weighted_integral(xs, F, true), 1e-6));
    }
  }
}

TEST_CASE("EDF statistics are invariant to input order", "[gof][property]") {
  std::vector<double> v = uniform_data(30, 73);
  const Dataset a(v);
  std::reverse(v.begin(), v.end());
  std::shuffle(v.begin(), v.end(), std::mt19937_64(1));
  const Dataset b(v);
  CHECK(ks_stat(a, uniform_cdf) == ks_stat(b, uniform_cdf));
  CHECK(cvm_stat(a, uniform_cdf) == cvm_stat(b, uniform_cdf));
  CHECK(ad_stat(a, uniform_cdf).statistic == ad_stat(b, uniform_cdf).statistic);
  CHECK(sample_skewness(a) == sample_skewness(b));
}

TEST_CASE("Anderson-Darling clamps degenerate cdf values", "[gof]") {
  const AndersonDarling ad = ad_stat(Dataset({-1.0, 0.5, 2.0}), uniform_cdf);
  CHECK(ad.clamped);
  CHECK(std::isfinite(ad.statistic));
}

TEST_CASE("KS p-value", "[gof]") {
  CHECK(ks_pvalue(0.0, 10) == 1.0);
  CHECK_THAT(ks_pvalue(1.2238 / std::sqrt(100.0), 100), WithinAbs(0.10, 1e-3));
  CHECK_THAT(ks_pvalue(1.3581 / std::sqrt(400.0), 400), WithinAbs(0.05, 1e-3));
  CHECK_THAT(ks_pvalue(1.6276 / std::sqrt(50.0), 50), WithinAbs(0.01, 1e-4));
  CHECK(ks_pvalue(0.9, 37) < 2.2e-16);
  double prev = 1.0;
  for (double d = 0.0; d <= 0.5; d += 0.01) {
    const double pv = ks_pvalue(d, 37);
    CHECK(pv >= 0.0);
    CHECK(pv <= prev);
    prev = pv;
  }
}

TEST_CASE("information criteria reproduce the ERLD and ExpLD columns", "[gof]") {
  const CriteriaReport erld = info_criteria(1298.939, 5, 37);
  CHECK_THAT(erld.aic, WithinAbs(2607.878, 0.01));
  CHECK_THAT(erld.bic, WithinAbs(2615.933, 0.01));
  CHECK_THAT(*erld.caic, WithinAbs(2609.813, 0.01));
  CHECK_THAT(erld.hqic, WithinAbs(2610.718, 0.01));

  const CriteriaReport expld = info_criteria(1629.850, 3, 37);
  CHECK_THAT(expld.aic, WithinAbs(3265.700, 0.01));
  CHECK_THAT(expld.bic, WithinAbs(3270.533, 0.01));
  CHECK_THAT(*expld.caic, WithinAbs(3266.427, 0.01));
  CHECK_THAT(expld.hqic, WithinAbs(3267.404, 0.01));
}

TEST_CASE("information criteria structure", "[gof][property]") {
  const CriteriaReport zero = info_criteria(0.0, 0, 10);
  CHECK(zero.aic == 0.0);
  CHECK(zero.bic == 0.0);
  CHECK(zero.hqic == 0.0);
  CHECK(*zero.caic == 0.0);

  CHECK_FALSE(info_criteria(5.0, 4, 5).caic.has_value());

  for (std::size_t k = 1; k <= 5; ++k) {
    const CriteriaReport r = info_criteria(100.0, k, 37);
    CHECK_THAT(*r.caic - r.aic, WithinRel(2.0 * k * (k + 1) / (37.0 - k - 1.0), 1e-12));
    CHECK(*r.caic > r.aic);
    CHECK(r.bic > r.aic);
    const CriteriaReport more = info_criteria(100.0, k + 1, 37);
    CHECK(more.aic > r.aic);
    CHECK(more.bic > r.bic);
    CHECK(more.hqic > r.hqic);
    CHECK(*more.caic > *r.caic);
  }
}

TEST_CASE("evaluate bundles the statistics", "[gof]") {
  const Dataset d(uniform_data(25, 74));
  const GofReport r = evaluate(d, uniform_cdf);
  CHECK(r.n == 25);
  CHECK(r.ks == ks_stat(d, uniform_cdf));
  CHECK(r.ks_p == ks_pvalue(r.ks, 25));
  CHECK(r.cvm >= 1.0 / (12.0 * 25));
  CHECK(r.ks >= 0.0);
  CHECK(r.ks <= 1.0);
}
