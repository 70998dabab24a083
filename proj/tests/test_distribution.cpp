#include <catch2/catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "erl/distribution.hpp"
#include "erl/error.hpp"

using namespace erl;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ErlParams kExp(1.0, 1.0, 1.0, 0.5, 2.0);
const ErlParams kMax2(2.0, 1.0, 1.0, 0.5, 2.0);  // max of two unit exponentials, minus 1

std::vector<ErlParams> random_params(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_u(std::log(0.3), std::log(4.0));
  std::vector<ErlParams> out;
  for (int i = 0; i < count; ++i) {
    out.emplace_back(std::exp(log_u(rng)), std::exp(log_u(rng)), std::exp(log_u(rng)), std::exp(log_u(rng)),
                     std::exp(log_u(rng)));
  }
  return out;
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double ks_against(std::vector<double> xs, const ErlParams& p) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i], p);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double two_sample_ks(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= t) ++i;
    while (j < y.size() && y[j] <= t) ++j;
    d = std::max(d, std::fabs(double(i) / x.size() - double(j) / y.size()));
  }
  return d;
}

}  // namespace

TEST_CASE("ErlParams validation and array order", "[distribution]") {
  CHECK_THROWS_AS(ErlParams(0.0, 1.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ErlParams(1.0, -2.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ErlParams(1.0, 1.0, 1.0, std::nan(""), 1.0), DomainError);
  const ErlParams p(0.1, 0.2, 0.3, 0.4, 0.5);
  CHECK(p.to_array() == std::array<double, 5>{0.1, 0.2, 0.3, 0.4, 0.5});
  CHECK(ErlParams::from_array(p.to_array()) == p);
}

TEST_CASE("pdf, cdf, survival worked values", "[distribution]") {
  // 2 K k with K = 1 - 1/e, k = 1/e.
  const double K = -std::expm1(-1.0);
  const double k = std::exp(-1.0);
  CHECK_THAT(pdf(0.0, kMax2), WithinAbs(2.0 * K * k, 1e-12));
  CHECK_THAT(pdf(0.0, kMax2), WithinAbs(0.4650883159, 1e-10));
  CHECK_THAT(cdf(0.0, kMax2), WithinAbs(0.3995764009, 1e-10));
  CHECK_THAT(survival(0.0, kMax2), WithinAbs(0.6004235991, 1e-10));
  CHECK_THAT(hazard(0.0, kMax2), WithinAbs(2.0 * K * k / (1.0 - K * K), 1e-12));
  CHECK_THAT(reversed_hazard(0.0, kExp), WithinAbs(0.5819767069, 1e-10));
  CHECK_THAT(hazard(0.0, kExp), WithinAbs(1.0, 1e-12));
  CHECK_THAT(hazard(3.0, kExp), WithinAbs(1.0, 1e-12));
  CHECK(pdf(-1.0, kMax2) == 0.0);
  CHECK(pdf(-3.0, kMax2) == 0.0);
  CHECK(cdf(-1.0, kMax2) == 0.0);
  CHECK(survival(-1.0, kMax2) == 1.0);
  CHECK(std::isinf(reversed_hazard(-1.0, kMax2)));
  CHECK(reversed_hazard(60.0, kMax2) < 1e-20);
}

TEST_CASE("hazard stays finite far beyond the range of exp(-z)", "[distribution]") {
  // a = b = 1 leaves the parent hazard 4 t^3 with t = 1 + x.
  const ErlParams p(1.0, 1.0, 1.0, 2.0, 2.0);
  for (const double x : {5.0, 10.0, 1e5}) {
    CHECK_THAT(hazard(x, p), WithinRel(4.0 * std::pow(1.0 + x, 3), 1e-12));
  }
}

TEST_CASE("small b keeps real mass where exp(-z) underflows", "[distribution]") {
  const ErlParams p(0.15, 7e-4, 0.5, 0.32, 1685.0);
  // Survival as the integral of the density beyond x, in the variable z.
  const auto tail = [&](double x) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double z0 = baseline::terms(x, p.base()).z;
    const auto f = [&](double s) {
      const double xs = baseline::quantile_from_z(z0 + s, p.base());
      const double dz = 2.0 * p.lambda() * (z0 + s) / (p.theta() + xs);
      return std::exp(log_pdf(xs, p)) / dz;
    };
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-12);
  };
  for (const double x : {-0.15, 0.0, 0.2, 1.0, 4.5}) {
    INFO("x=" << x);
    const double s = survival(x, p);
    CHECK(s > 0.05);
    CHECK_THAT(s, WithinRel(tail(x), 1e-8));
    CHECK_THAT(cdf(x, p) + s, WithinAbs(1.0, 1e-15));
    CHECK_THAT(hazard(x, p), WithinRel(pdf(x, p) / s, 1e-9));
    CHECK_THAT(quantile(cdf(x, p), p), WithinAbs(x, 1e-8 * std::max(1.0, std::fabs(x))));
  }
  // No jump where the evaluation switches form.
  const double x_switch = baseline::quantile_from_z(700.0, p.base());
  const double below = std::nextafter(x_switch, -1.0);
  const double above = std::nextafter(x_switch, 1.0);
  CHECK_THAT(survival(above, p), WithinRel(survival(below, p), 1e-12));
  CHECK_THAT(hazard(above, p), WithinRel(hazard(below, p), 1e-9));
}

TEST_CASE("quantile worked values", "[distribution]") {
  CHECK_THAT(quantile(0.3995764009, kMax2), WithinAbs(0.0, 1e-8));
  CHECK(quantile(0.0, kMax2) == -1.0);
  CHECK(std::isinf(quantile(1.0, kMax2)));
  CHECK_THROWS_AS(quantile(1.01, kMax2), DomainError);
}

TEST_CASE("a = b = 1 reproduces the parent", "[distribution]") {
  const ErlParams p(1.0, 1.0, 2.0, 1.7, 0.4);
  for (double x = -1.99; x < 6.0; x += 0.1) {
    CHECK_THAT(pdf(x, p), WithinAbs(baseline::pdf(x, p.base()), 1e-12));
    CHECK_THAT(cdf(x, p), WithinAbs(baseline::cdf(x, p.base()), 1e-12));
  }
}

TEST_CASE("Lehmann II and exponentiated reductions", "[distribution][property]") {
  const BaselineParams base(1.5, 0.8, 1.2);
  for (const double s : {0.4, 1.0, 2.7}) {
    const ErlParams lehmann(1.0, s, base);
    const ErlParams exponentiated(s, 1.0, base);
    for (double x = -1.45; x < 5.0; x += 0.1) {
      const double K = baseline::cdf(x, base);
      const double k = baseline::pdf(x, base);
      CHECK_THAT(pdf(x, lehmann), WithinAbs(s * std::pow(1.0 - K, s - 1.0) * k, 1e-12));
      CHECK_THAT(pdf(x, exponentiated), WithinAbs(s * std::pow(K, s - 1.0) * k, 1e-12));
    }
  }
}

TEST_CASE("cdf matches boost ibeta of the parent cdf", "[distribution]") {
  for (const auto& p : random_params(31, 10)) {
    for (double prob = 0.02; prob < 1.0; prob += 0.06) {
      const double x = baseline::quantile(prob, p.base());
      CHECK_THAT(cdf(x, p), WithinAbs(boost::math::ibeta(p.a(), p.b(), baseline::cdf(x, p.base())), 1e-12));
    }
  }
}

TEST_CASE("derivative of the cdf matches the pdf", "[distribution][property]") {
  for (const auto& p : random_params(32, 10)) {
    const double lo = quantile(0.02, p);
    const double hi = quantile(0.98, p);
    for (int i = 0; i <= 30; ++i) {
      const double x = lo + (hi - lo) * i / 30.0;
      const double h = 1e-5 * std::max(1.0, std::fabs(x));
      const double fd = (cdf(x + h, p) - cdf(x - h, p)) / (2.0 * h);
      CHECK_THAT(fd, WithinAbs(pdf(x, p), 1e-6));
    }
  }
}

TEST_CASE("hazard identities and complement", "[distribution][property]") {
  for (const auto& p : random_params(33, 10)) {
    const double lo = quantile(0.001, p);
    const double hi = quantile(0.999, p);
    for (int i = 0; i <= 50; ++i) {
      const double x = lo + (hi - lo) * i / 50.0;
      CHECK_THAT(hazard(x, p) * survival(x, p) - pdf(x, p), WithinAbs(0.0, 1e-12));
      CHECK_THAT(reversed_hazard(x, p) * cdf(x, p) - pdf(x, p), WithinAbs(0.0, 1e-12));
      CHECK_THAT(cdf(x, p) + survival(x, p), WithinAbs(1.0, 1e-12));
    }
  }
}

TEST_CASE("quantile round trip on 10^3 random points", "[distribution][property]") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto params = random_params(35, 10);
  for (int i = 0; i < 1000; ++i) {
    const ErlParams& p = params[i % params.size()];
    const double prob = u(rng);
    CHECK_THAT(cdf(quantile(prob, p), p), WithinAbs(prob, 1e-8));
  }
}

TEST_CASE("sampling is deterministic and inside the support", "[distribution]") {
  const ErlParams p(0.7, 2.2, 0.9, 1.4, 0.6);
  const auto s1 = sample(5000, p, 5);
  CHECK(s1 == sample(5000, p, 5));
  CHECK(s1 != sample(5000, p, 6));
  for (const double x : s1) CHECK(x > -p.theta());
  CHECK_THROWS_AS(sample(0, p, 1), DomainError);
}

TEST_CASE("a = b = 1 sampling matches the parent sampler in law", "[distribution]") {
  const BaselineParams base(1.0, 0.5, 2.0);
  const auto erl_draws = sample(10000, ErlParams(1.0, 1.0, base), 41);
  const auto parent_draws = baseline::sample(10000, base, 42);
  CHECK(two_sample_ks(erl_draws, parent_draws) < 0.03);
}

TEST_CASE("one-sample KS of draws stays below the 1% critical value", "[distribution][property]") {
  const std::vector<ErlParams> params = {kMax2, ErlParams(0.5, 3.0, 2.0, 1.5, 0.3), ErlParams(4.0, 0.6, 0.5, 0.7, 2.5),
                                         ErlParams(1.3, 1.3, 1.0, 2.0, 1.0), ErlParams(0.801, 5.5, 0.025, 0.113, 0.501)};
  for (const auto& p : params) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      CHECK(ks_against(sample(10000, p, seed), p) < 1.63 / std::sqrt(10000.0));
    }
  }
}

TEST_CASE("sample mean at 10^6 draws, a = 2", "[distribution]") {
  const auto draws = sample(1000000, kMax2, 77);
  CHECK(std::fabs(mean_of(draws) - 0.5) <= 3.0 * std::sqrt(1.25 / 1e6));
}

TEST_CASE("raw moments worked values", "[distribution]") {
  const ErlParams p(2.5, 0.7, 3.0, 1.2, 0.4);
  CHECK(raw_moment(0, p) == 1.0);
  CHECK_THAT(raw_moment(1, kExp), WithinAbs(0.0, 1e-8));
  CHECK_THAT(raw_moment(1, kMax2), WithinAbs(0.5, 1e-8));
  CHECK_THAT(raw_moment(2, kMax2), WithinAbs(1.5, 1e-8));
  CHECK_THROWS_AS(raw_moment(-1, p), DomainError);
}

TEST_CASE("central moments and shape of the shifted exponential", "[distribution]") {
  const CentralMoments m = central_moments(kExp);
  CHECK_THAT(m.mean, WithinAbs(0.0, 1e-8));
  CHECK_THAT(m.mu2, WithinAbs(1.0, 1e-8));
  CHECK_THAT(m.mu3, WithinAbs(2.0, 1e-8));
  CHECK_THAT(m.mu4, WithinAbs(9.0, 1e-8));
  CHECK_THAT(skewness(kExp), WithinAbs(2.0, 1e-8));
  CHECK_THAT(kurtosis(kExp), WithinAbs(6.0, 1e-8));
  CHECK_THROWS_AS(coefficient_of_variation(kExp), UndefinedError);
  CHECK_THAT(coefficient_of_variation(ErlParams(1.0, 1.0, 1.0, 0.5, 1.0)), WithinAbs(2.0, 1e-8));
}

TEST_CASE("excess kurtosis is bounded below by skewness squared minus 2", "[distribution][property]") {
  for (const auto& p : random_params(36, 10)) {
    CHECK(kurtosis(p) + 3.0 >= skewness(p) * skewness(p) + 1.0 - 1e-9);
  }
}

TEST_CASE("quadrature moments agree with Monte Carlo", "[distribution][property]") {
  const std::vector<ErlParams> params = {ErlParams(0.6, 2.0, 1.5, 1.1, 0.8), ErlParams(3.0, 0.8, 0.5, 2.5, 1.7)};
  for (const auto& p : params) {
    const auto draws = sample(1000000, p, 808);
    for (int r = 1; r <= 2; ++r) {
      double s = 0.0;
      double s2 = 0.0;
      for (const double x : draws) {
        const double xr = std::pow(x, r);
        s += xr;
        s2 += xr * xr;
      }
      const double n = static_cast<double>(draws.size());
      const double mc = s / n;
      const double se = std::sqrt((s2 / n - mc * mc) / n);
      CHECK(std::fabs(raw_moment(r, p) - mc) <= 4.0 * se);
    }
  }
}

TEST_CASE("mgf of the shifted exponential", "[distribution]") {
  for (const double s : {-2.0, -0.5, 0.0, 0.3, 0.7}) {
    CHECK_THAT(mgf(s, kExp), WithinRel(std::exp(-s) / (1.0 - s), 1e-8));
  }
}

TEST_CASE("normalization worked values", "[distribution]") {
  CHECK_THAT(normalization_check(kExp), WithinAbs(1.0, 1e-10));
  CHECK_THAT(normalization_check(ErlParams(2.5, 0.7, 3.0, 1.2, 0.4)), WithinAbs(1.0, 1e-8));
  CHECK_THAT(normalization_check(ErlParams(0.801, 5.5, 0.025, 0.113, 0.501)), WithinAbs(1.0, 1e-8));
}

TEST_CASE("log density agrees with pdf and with the offset form", "[distribution]") {
  for (const auto& p : random_params(37, 5)) {
    const LogDensity ld(p);
    for (double prob = 0.05; prob < 1.0; prob += 0.1) {
      const double x = quantile(prob, p);
      CHECK_THAT(std::exp(ld(x)), WithinRel(pdf(x, p), 1e-13));
      CHECK_THAT(ld.at_offset((p.theta() + x) / p.theta()), WithinAbs(ld(x), 1e-10));
    }
    CHECK(std::isinf(ld(-p.theta())));
  }
}

TEST_CASE("draws within one ulp of the lower endpoint stay inside the support", "[distribution]") {
  // Small a and lambda put the 1e-5 quantile closer to -theta than theta's ulp.
  const ErlParams p(0.287815, 0.613062, 0.519047, 0.21801, 2.58298);
  const double x = quantile(1e-5, p);
  CHECK(x > -p.theta());
  CHECK(x == std::nextafter(-p.theta(), 0.0));
  CHECK(quantile(0.0, p) == -p.theta());
  for (const double v : sample(20000, p, 87)) REQUIRE(v > -p.theta());
  CHECK(baseline::quantile(1e-300, p.base()) > -p.theta());
}
