#pragma once

#include <cstdint>
#include <vector>

namespace erl {

/// Parameters of the Rayleigh-Lomax parent law. The support is the open
/// interval (-theta, inf).
class BaselineParams {
 public:
  /// Throws DomainError unless all three are positive and finite.
  BaselineParams(double theta, double lambda, double beta);

  double theta() const { return theta_; }
  double lambda() const { return lambda_; }
  double beta() const { return beta_; }

  bool operator==(const BaselineParams&) const = default;

 private:
  double theta_;
  double lambda_;
  double beta_;
};

namespace baseline {

/// Pieces of the parent law at one point, all in log form where that
/// matters. `z` is the exponent (beta/2) ((theta+x)/theta)^(2 lambda), so
/// that 1 - K = exp(-z).
struct Terms {
  bool inside = false;     // x > -theta
  double z = 0.0;
  double log_cdf = 0.0;    // ln K
  double log_pdf = 0.0;    // ln k
};

/// Evaluates the parent terms from the standardized offset t = (theta+x)/theta.
/// Callers that already hold t (quadrature over the support) avoid the
/// cancellation in theta + x near the lower endpoint.
Terms terms_at_offset(double t, const BaselineParams& p);

Terms terms(double x, const BaselineParams& p);

/// K(x) = 1 - exp(-(beta/2) ((theta+x)/theta)^(2 lambda)); 0 for x <= -theta.
double cdf(double x, const BaselineParams& p);

/// k(x) = (beta lambda/theta) ((theta+x)/theta)^(2 lambda - 1) exp(-z); 0 outside the support.
double pdf(double x, const BaselineParams& p);

/// Inverse of cdf on [0, 1); returns +inf for prob == 1.
double quantile(double prob, const BaselineParams& p);

/// Inverse expressed through the upper-tail probability q = 1 - prob, for
/// callers that know q to full relative precision.
double quantile_upper(double q, const BaselineParams& p);

/// Point where the exponent equals z, i.e. where 1 - K = exp(-z). Reaches
/// tails beyond the range of quantile_upper.
double quantile_from_z(double z, const BaselineParams& p);

/// Closed-form r-th raw moment
///   sum_h C(r,h) theta^h (2/beta)^(h/(2 lambda)) (-theta)^(r-h) Gamma(h/(2 lambda) + 1).
double moment_series(int r, const BaselineParams& p);

/// n inverse-transform draws. Deterministic for a fixed seed.
std::vector<double> sample(std::size_t n, const BaselineParams& p, std::uint64_t seed);

}  // namespace baseline
}  // namespace erl
