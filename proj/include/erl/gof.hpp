#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "erl/estimation.hpp"

namespace erl::gof {

using Cdf = std::function<double(double)>;

/// Population-convention central moment m_r = (1/n) sum (x_i - mean)^r.
double central_moment(const Dataset& data, int r);

/// m3 / m2^1.5. UndefinedError for n < 2 or zero variance.
double sample_skewness(const Dataset& data);

/// Raw (non-excess) kurtosis m4 / m2^2. Note erl::kurtosis reports excess kurtosis.
double sample_kurtosis(const Dataset& data);

/// Kolmogorov-Smirnov D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
double ks_stat(const Dataset& data, const Cdf& cdf);

/// Cramer-von Mises W^2 = 1/(12n) + sum (F(x_(i)) - (2i-1)/(2n))^2.
double cvm_stat(const Dataset& data, const Cdf& cdf);

struct AndersonDarling {
  double statistic;
  bool clamped;  // some F(x_(i)) was pushed into [1e-300, 1 - 1e-16]
};

/// A^2 = -n - (1/n) sum (2i-1) [ln F(x_(i)) + ln(1 - F(x_(n+1-i)))].
AndersonDarling ad_stat(const Dataset& data, const Cdf& cdf);

/// Asymptotic Kolmogorov tail probability P(sqrt(n) D_n > sqrt(n) d).
double ks_pvalue(double d, std::size_t n);

struct GofReport {
  double ks;
  double ks_p;
  double ad;
  bool ad_clamped;
  double cvm;
  std::size_t n;
};

GofReport evaluate(const Dataset& data, const Cdf& cdf);

struct CriteriaReport {
  double nll;
  std::size_t k;
  std::size_t n;
  double aic;
  std::optional<double> caic;  // empty when n <= k + 1
  double hqic;
  double bic;
};

/// AIC = 2 nll + 2k; BIC = 2 nll + k ln n; HQIC = 2 nll + 2k ln ln n;
/// CAIC is the small-sample corrected AIC, AIC + 2k(k+1)/(n-k-1).
CriteriaReport info_criteria(double nll, std::size_t k, std::size_t n);

}  // namespace erl::gof
