#include "erl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "erl/error.hpp"
#include "erl/kernels.hpp"
#include "erl/quadrature.hpp"
#include "erl/random.hpp"
#include "erl/specfun.hpp"

namespace erl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double check_shape(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
  }
  return v;
}

// (m - 1) * log_value with the convention 0 * (-inf) = 0.
double scaled_log(double m, double log_value) { return m == 1.0 ? 0.0 : (m - 1.0) * log_value; }

// Point of the support expressed through v = ln z, z = -ln(1 - K(x)).
struct SupportPoint {
  double v;
  double z;
  double offset;      // t = (theta + x) / theta
  double x;
  double log_weight;  // ln of the ERL density of v
};

class SupportMap {
 public:
  explicit SupportMap(const ErlParams& p)
      : p_(p),
        log_beta_(specfun::log_beta(p.a(), p.b())),
        log_half_beta_(std::log(0.5 * p.beta())) {}

  SupportPoint at(double v) const {
    SupportPoint s{};
    s.v = v;
    s.z = std::exp(v);
    s.offset = std::exp((v - log_half_beta_) / (2.0 * p_.lambda()));
    s.x = p_.theta() * s.offset - p_.theta();
    // ln(1 - e^{-z}), with ln z = v once z is tiny.
    const double log_k = v < -20.0 ? v - 0.5 * s.z : std::log(-std::expm1(-s.z));
    s.log_weight = scaled_log(p_.a(), log_k) - p_.b() * s.z + v - log_beta_;
    return s;
  }

  const ErlParams& params() const { return p_; }
  double log_beta() const { return log_beta_; }

 private:
  ErlParams p_;
  double log_beta_;
  double log_half_beta_;
};

struct SupportIntegral {
  double coarse;    // 16-point composite rule
  double fine;      // 32-point composite rule
  double absolute;  // integral of |f| with the fine rule
};

// Integrates f over v in (-inf, inf). The range is cut where |f| falls 45
// e-folds below its peak; below v = -30 the integrand behaves like
// exp(a v) and the cut is placed analytically.
SupportIntegral integrate_support(const SupportMap& map,
                                  const std::function<double(const SupportPoint&)>& f) {
  constexpr double kStart = -30.0;
  constexpr double kStep = 0.25;
  constexpr double kDrop = 45.0;
  constexpr double kLimit = 700.0;
  const double a = map.params().a();

  auto log_abs = [&](double v) {
    const double value = f(map.at(v));
    if (std::isnan(value) || std::isinf(value)) {
      throw NumericalError("support integrand is not finite at v=" + std::to_string(v));
    }
    return value == 0.0 ? -kInf : std::log(std::fabs(value));
  };

  const double log_at_start = log_abs(kStart);
  double peak = log_at_start;
  double v = kStart;
  int below = 0;
  bool decayed = false;
  while (v < kLimit) {
    v += kStep;
    const double lv = log_abs(v);
    if (lv > peak) {
      peak = lv;
      below = 0;
    } else if (lv < peak - kDrop) {
      if (++below >= 4) {
        decayed = true;
        break;
      }
    } else {
      below = 0;
    }
  }
  if (!decayed || !std::isfinite(peak)) {
    throw NumericalError("support integral does not converge (integrand fails to decay)");
  }
  const double v_hi = v;

  double v_lo = kStart;
  if (std::isfinite(log_at_start)) {
    const double cut = kStart + (peak - kDrop - log_at_start + std::log(a)) / a;
    v_lo = std::min(kStart, cut);
  }

  auto panels_for = [](double width, double h) {
    return std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(width / h)));
  };
  auto eval = [&](double vv) { return f(map.at(vv)); };
  auto eval_abs = [&](double vv) { return std::fabs(f(map.at(vv))); };

  SupportIntegral out{0.0, 0.0, 0.0};
  const double h_core = std::min(kStep, 1.0 / a);
  const std::size_t core_panels = panels_for(v_hi - kStart, h_core);
  out.coarse += quadrature::composite(eval, kStart, v_hi, core_panels, 16);
  out.fine += quadrature::composite(eval, kStart, v_hi, core_panels, 32);
  out.absolute += quadrature::composite(eval_abs, kStart, v_hi, core_panels, 32);
  if (v_lo < kStart) {
    const double h_tail = std::max(kStep, std::min(2.0 / a, 50.0));
    const std::size_t tail_panels = panels_for(kStart - v_lo, h_tail);
    out.coarse += quadrature::composite(eval, v_lo, kStart, tail_panels, 16);
    out.fine += quadrature::composite(eval, v_lo, kStart, tail_panels, 32);
    out.absolute += quadrature::composite(eval_abs, v_lo, kStart, tail_panels, 32);
  }
  return out;
}

double checked(const SupportIntegral& r, const char* what) {
  constexpr double kAgreement = 1e-7;
  if (!std::isfinite(r.fine) || !std::isfinite(r.coarse)) {
    throw NumericalError(std::string(what) + ": quadrature result is not finite");
  }
  const double scale = std::max(r.absolute, std::numeric_limits<double>::min());
  if (std::fabs(r.fine - r.coarse) > kAgreement * scale) {
    throw NumericalError(std::string(what) + ": 16- and 32-point composite rules disagree");
  }
  return r.fine;
}

}  // namespace

ErlParams::ErlParams(double a, double b, double theta, double lambda, double beta)
    : a_(check_shape(a, "a")), b_(check_shape(b, "b")), base_(theta, lambda, beta) {}

ErlParams::ErlParams(double a, double b, const BaselineParams& base)
    : a_(check_shape(a, "a")), b_(check_shape(b, "b")), base_(base) {}

ErlParams ErlParams::from_array(const std::array<double, 5>& v) {
  return ErlParams(v[0], v[1], v[2], v[3], v[4]);
}

std::array<double, 5> ErlParams::to_array() const { return {a_, b_, theta(), lambda(), beta()}; }

LogDensity::LogDensity(const ErlParams& p)
    : params_(p), log_beta_(specfun::log_beta(p.a(), p.b())) {}

double LogDensity::from_terms(const baseline::Terms& t) const {
  if (!t.inside) return -kInf;
  return scaled_log(params_.a(), t.log_cdf) + scaled_log(params_.b(), -t.z) + t.log_pdf - log_beta_;
}

double LogDensity::operator()(double x) const { return from_terms(baseline::terms(x, params_.base())); }

double LogDensity::at_offset(double t) const {
  return from_terms(baseline::terms_at_offset(t, params_.base()));
}

double log_pdf(double x, const ErlParams& p) { return LogDensity(p)(x); }

double pdf(double x, const ErlParams& p) { return std::exp(log_pdf(x, p)); }

namespace {

// Past this z, exp(-z) is below the normal range. The survival I_y(b, a)
// with y = exp(-z) is then y^b / (b B(a, b)) to working precision, kept in
// logs because y^b need not be small when b is.
constexpr double kDeepTail = 700.0;

double log_survival_deep(double z, const ErlParams& p) {
  return -p.b() * z - std::log(p.b()) - specfun::log_beta(p.a(), p.b());
}

double log_survival(const baseline::Terms& t, const ErlParams& p) {
  if (t.z > kDeepTail) return std::min(0.0, log_survival_deep(t.z, p));
  return specfun::log_reg_inc_beta(std::exp(-t.z), -std::expm1(-t.z), p.b(), p.a());
}

}  // namespace

double cdf(double x, const ErlParams& p) {
  const baseline::Terms t = baseline::terms(x, p.base());
  if (!t.inside) return 0.0;
  if (t.z > kDeepTail) return -std::expm1(log_survival(t, p));
  const double upper = std::exp(-t.z);
  return specfun::reg_inc_beta(-std::expm1(-t.z), upper, p.a(), p.b());
}

double survival(double x, const ErlParams& p) {
  const baseline::Terms t = baseline::terms(x, p.base());
  if (!t.inside) return 1.0;
  if (t.z > kDeepTail) return std::exp(log_survival(t, p));
  return specfun::reg_inc_beta(std::exp(-t.z), -std::expm1(-t.z), p.b(), p.a());
}

double hazard(double x, const ErlParams& p) {
  const baseline::Terms t = baseline::terms(x, p.base());
  if (!t.inside) return 0.0;
  // Density and survival share the factor exp(-b z); what remains is b dz/dx.
  if (t.z > kDeepTail && log_survival_deep(t.z, p) < 0.0) {
    return p.b() * 2.0 * p.lambda() * t.z / (p.theta() + x);
  }
  const double log_surv = log_survival(t, p);
  if (log_surv == -kInf) return kInf;
  return std::exp(LogDensity(p)(x) - log_surv);
}

double reversed_hazard(double x, const ErlParams& p) {
  const baseline::Terms t = baseline::terms(x, p.base());
  if (!t.inside) return kInf;
  const double log_cdf = t.z > kDeepTail
                             ? std::log(-std::expm1(log_survival(t, p)))
                             : specfun::log_reg_inc_beta(-std::expm1(-t.z), std::exp(-t.z), p.a(), p.b());
  if (log_cdf == -kInf) return kInf;
  return std::exp(LogDensity(p)(x) - log_cdf);
}

double quantile(double prob, const ErlParams& p) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw DomainError("probability must lie in [0, 1], got " + std::to_string(prob));
  }
  if (prob == 1.0) return kInf;
  if (prob == 0.0) return -p.theta();
  const specfun::BetaQuantile bq = specfun::inv_reg_inc_beta_pair(prob, p.a(), p.b());
  if (bq.x <= 0.5) {
    // The exact point can sit closer to -theta than one ulp of theta; keep
    // it inside the open support.
    return std::max(baseline::quantile(bq.x, p.base()), std::nextafter(-p.theta(), 0.0));
  }
  if (bq.one_minus_x > 1e-300) return baseline::quantile_upper(bq.one_minus_x, p.base());
  // Invert the deep-tail survival for z directly.
  const double z = -(std::log1p(-prob) + std::log(p.b()) + specfun::log_beta(p.a(), p.b())) / p.b();
  return baseline::quantile_from_z(std::max(z, kDeepTail), p.base());
}

std::vector<double> sample(std::size_t n, const ErlParams& p, std::uint64_t seed) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  UniformStream stream(seed);
  std::vector<double> uniforms(n);
  for (double& u : uniforms) u = stream.next();
  std::vector<double> out(n);
  kernels::quantile(uniforms, p, out);
  return out;
}

double raw_moment(int r, const ErlParams& p) {
  if (r < 0) throw DomainError("moment order must be non-negative");
  if (r == 0) return 1.0;
  const SupportMap map(p);
  const double dr = static_cast<double>(r);
  return checked(integrate_support(map,
                                   [dr](const SupportPoint& s) {
                                     return std::pow(s.x, dr) * std::exp(s.log_weight);
                                   }),
                 "raw moment");
}

CentralMoments central_moments(const ErlParams& p) {
  const double m1 = raw_moment(1, p);
  const double m2 = raw_moment(2, p);
  const double m3 = raw_moment(3, p);
  const double m4 = raw_moment(4, p);
  CentralMoments c{};
  c.mean = m1;
  c.mu2 = m2 - m1 * m1;
  c.mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1 * m1 * m1;
  c.mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
  return c;
}

double skewness(const ErlParams& p) {
  const CentralMoments c = central_moments(p);
  if (!(c.mu2 > 0.0)) throw UndefinedError("skewness undefined: variance is zero");
  return c.mu3 / std::pow(c.mu2, 1.5);
}

double kurtosis(const ErlParams& p) {
  const CentralMoments c = central_moments(p);
  if (!(c.mu2 > 0.0)) throw UndefinedError("kurtosis undefined: variance is zero");
  return c.mu4 / (c.mu2 * c.mu2) - 3.0;
}

double coefficient_of_variation(const ErlParams& p) {
  const CentralMoments c = central_moments(p);
  if (!(c.mu2 > 0.0)) throw UndefinedError("coefficient of variation undefined: variance is zero");
  const double sd = std::sqrt(c.mu2);
  if (std::fabs(c.mean) <= 1e-9 * sd) {
    throw UndefinedError("coefficient of variation undefined: mean is zero");
  }
  return sd / c.mean;
}

double mgf(double s, const ErlParams& p) {
  if (!std::isfinite(s)) throw DomainError("mgf argument must be finite");
  const SupportMap map(p);
  return checked(integrate_support(map,
                                   [s](const SupportPoint& pt) {
                                     return std::exp(s * pt.x + pt.log_weight);
                                   }),
                 "mgf");
}

double normalization_check(const ErlParams& p) {
  const SupportMap map(p);
  const LogDensity density(p);
  const double theta = p.theta();
  const double two_lambda = 2.0 * p.lambda();
  // dx/dv = theta t / (2 lambda)
  return checked(integrate_support(map,
                                   [&](const SupportPoint& s) {
                                     return std::exp(density.at_offset(s.offset)) * theta * s.offset /
                                            two_lambda;
                                   }),
                 "normalization");
}

}  // namespace erl
