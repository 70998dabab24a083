#include "erl/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "erl/error.hpp"
#include "erl/random.hpp"
#include "erl/specfun.hpp"

namespace erl {

BaselineParams::BaselineParams(double theta, double lambda, double beta)
    : theta_(theta), lambda_(lambda), beta_(beta) {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    }
  };
  check(theta, "theta");
  check(lambda, "lambda");
  check(beta, "beta");
}

namespace baseline {

Terms terms_at_offset(double t, const BaselineParams& p) {
  Terms out;
  if (!(t > 0.0)) return out;
  out.inside = true;
  const double log_t = std::log(t);
  const double log_z = std::log(0.5 * p.beta()) + 2.0 * p.lambda() * log_t;
  out.z = std::exp(log_z);
  // K = 1 - exp(-z) ~ z (1 - z/2) once z is tiny; this keeps ln K finite
  // even after z itself underflows.
  out.log_cdf = log_z < -20.0 ? log_z - 0.5 * out.z : std::log(-std::expm1(-out.z));
  out.log_pdf = std::log(p.beta() * p.lambda() / p.theta()) + (2.0 * p.lambda() - 1.0) * log_t - out.z;
  return out;
}

Terms terms(double x, const BaselineParams& p) {
  if (std::isnan(x)) throw DomainError("x is NaN");
  if (x == std::numeric_limits<double>::infinity()) {
    Terms out;
    out.inside = true;
    out.z = x;
    out.log_pdf = -x;
    return out;
  }
  return terms_at_offset((p.theta() + x) / p.theta(), p);
}

double cdf(double x, const BaselineParams& p) {
  const Terms t = terms(x, p);
  if (!t.inside) return 0.0;
  return -std::expm1(-t.z);
}

double pdf(double x, const BaselineParams& p) {
  const Terms t = terms(x, p);
  if (!t.inside) return 0.0;
  return std::exp(t.log_pdf);
}

double quantile_upper(double q, const BaselineParams& p) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("upper-tail probability must lie in [0, 1], got " + std::to_string(q));
  }
  if (q == 0.0) return std::numeric_limits<double>::infinity();
  if (q == 1.0) return -p.theta();
  return quantile_from_z(-std::log(q), p);
}

double quantile_from_z(double z, const BaselineParams& p) {
  if (std::isinf(z)) return std::numeric_limits<double>::infinity();
  const double offset = std::exp(std::log(2.0 * z / p.beta()) / (2.0 * p.lambda()));
  return p.theta() * offset - p.theta();
}

double quantile(double prob, const BaselineParams& p) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw DomainError("probability must lie in [0, 1], got " + std::to_string(prob));
  }
  if (prob == 1.0) return std::numeric_limits<double>::infinity();
  if (prob == 0.0) return -p.theta();
  const double z = -std::log1p(-prob);
  const double offset = std::exp(std::log(2.0 * z / p.beta()) / (2.0 * p.lambda()));
  // Positive prob maps strictly inside the support even when the offset underflows.
  return std::max(p.theta() * offset - p.theta(), std::nextafter(-p.theta(), 0.0));
}

double moment_series(int r, const BaselineParams& p) {
  if (r < 0) throw DomainError("moment order must be non-negative");
  if (r == 0) return 1.0;
  const double u = 2.0 * p.lambda();
  double sum = 0.0;
  double binom = 1.0;
  for (int h = 0; h <= r; ++h) {
    if (h > 0) binom = binom * static_cast<double>(r - h + 1) / static_cast<double>(h);
    const double dh = static_cast<double>(h);
    const double term = binom * std::pow(p.theta(), dh) * std::pow(2.0 / p.beta(), dh / u) *
                        std::pow(-p.theta(), static_cast<double>(r - h)) *
                        std::exp(specfun::log_gamma(dh / u + 1.0));
    sum += term;
  }
  return sum;
}

std::vector<double> sample(std::size_t n, const BaselineParams& p, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  UniformStream stream(seed);
  std::vector<double> out(n);
  for (double& v : out) v = quantile(stream.next(), p);
  return out;
}

}  // namespace baseline
}  // namespace erl
