#include "erl/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "erl/error.hpp"

namespace erl::gof {
namespace {

double mean(const Dataset& data) {
  double sum = 0.0;
  for (const double x : data.values()) sum += x;
  return sum / static_cast<double>(data.size());
}

double checked_cdf(const Cdf& cdf, double x) {
  const double f = cdf(x);
  if (!(f >= 0.0 && f <= 1.0)) {
    throw DomainError("distribution function returned " + std::to_string(f) + " outside [0, 1]");
  }
  return f;
}

// m2 and the requested higher moment, after the degeneracy checks shared by
// skewness and kurtosis.
std::pair<double, double> moment_pair(const Dataset& data, int r) {
  if (data.size() < 2) throw UndefinedError("needs at least two observations");
  const double m2 = central_moment(data, 2);
  if (!(m2 > 0.0)) throw UndefinedError("sample variance is zero");
  return {m2, central_moment(data, r)};
}

}  // namespace

double central_moment(const Dataset& data, int r) {
  if (r < 0) throw DomainError("moment order must be non-negative");
  const double mu = mean(data);
  double sum = 0.0;
  for (const double x : data.values()) sum += std::pow(x - mu, r);
  return sum / static_cast<double>(data.size());
}

double sample_skewness(const Dataset& data) {
  const auto [m2, m3] = moment_pair(data, 3);
  return m3 / std::pow(m2, 1.5);
}

double sample_kurtosis(const Dataset& data) {
  const auto [m2, m4] = moment_pair(data, 4);
  return m4 / (m2 * m2);
}

double ks_stat(const Dataset& data, const Cdf& cdf) {
  const auto xs = data.values();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = checked_cdf(cdf, xs[i]);
    const double rank = static_cast<double>(i + 1);
    d = std::max({d, rank / n - f, f - (rank - 1.0) / n});
  }
  return d;
}

double cvm_stat(const Dataset& data, const Cdf& cdf) {
  const auto xs = data.values();
  const double n = static_cast<double>(xs.size());
  double sum = 1.0 / (12.0 * n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double diff = checked_cdf(cdf, xs[i]) - (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * n);
    sum += diff * diff;
  }
  return sum;
}

AndersonDarling ad_stat(const Dataset& data, const Cdf& cdf) {
  constexpr double kLow = 1e-300;
  constexpr double kHigh = 1.0 - 1e-16;
  const auto xs = data.values();
  const std::size_t n = xs.size();
  std::vector<double> f(n);
  bool clamped = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double raw = checked_cdf(cdf, xs[i]);
    f[i] = std::clamp(raw, kLow, kHigh);
    clamped = clamped || f[i] != raw;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = 2.0 * static_cast<double>(i + 1) - 1.0;
    sum += weight * (std::log(f[i]) + std::log1p(-f[n - 1 - i]));
  }
  const double dn = static_cast<double>(n);
  return {-dn - sum / dn, clamped};
}

double ks_pvalue(double d, std::size_t n) {
  if (!(d >= 0.0) || n == 0) throw DomainError("ks_pvalue needs d >= 0 and n >= 1");
  const double lambda = std::sqrt(static_cast<double>(n)) * d;
  if (lambda == 0.0) return 1.0;
  if (lambda < 1.0) {
    // Jacobi theta form of the Kolmogorov cdf converges fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf_sum = 0.0;
    for (int j = 1; j <= 100; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
      cdf_sum += term;
      if (term < 1e-16 * cdf_sum) break;
    }
    const double cdf = std::sqrt(2.0 * std::numbers::pi) / lambda * cdf_sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double p = 0.0;
  for (int j = 1; j <= 1000; ++j) {
    const double dj = j;
    const double term = std::exp(-2.0 * dj * dj * lambda * lambda);
    p += (j % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

GofReport evaluate(const Dataset& data, const Cdf& cdf) {
  GofReport r{};
  r.n = data.size();
  r.ks = ks_stat(data, cdf);
  r.ks_p = ks_pvalue(r.ks, r.n);
  const AndersonDarling ad = ad_stat(data, cdf);
  r.ad = ad.statistic;
  r.ad_clamped = ad.clamped;
  r.cvm = cvm_stat(data, cdf);
  return r;
}

CriteriaReport info_criteria(double nll, std::size_t k, std::size_t n) {
  if (n == 0) throw DomainError("information criteria need n >= 1");
  const double dk = static_cast<double>(k);
  const double dn = static_cast<double>(n);
  CriteriaReport r{};
  r.nll = nll;
  r.k = k;
  r.n = n;
  r.aic = 2.0 * nll + 2.0 * dk;
  r.bic = 2.0 * nll + (k == 0 ? 0.0 : dk * std::log(dn));
  r.hqic = 2.0 * nll + (k == 0 ? 0.0 : 2.0 * dk * std::log(std::log(dn)));
  if (n > k + 1) r.caic = r.aic + 2.0 * dk * (dk + 1.0) / (dn - dk - 1.0);
  return r;
}

}  // namespace erl::gof
