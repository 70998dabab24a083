#include "erl/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "erl/error.hpp"
#include "erl/kernels.hpp"
#include "erl/random.hpp"
#include "erl/specfun.hpp"

namespace erl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Point = std::vector<double>;
using Objective = std::function<double(const Point&)>;

struct SimplexResult {
  Point best;
  double value = kInf;
  std::size_t iterations = 0;
  bool converged = false;
};

bool spread_small(double worst, double best, double tol) {
  if (!std::isfinite(worst)) return false;
  return worst - best <= tol * std::max(1.0, std::fabs(best));
}

// Nelder-Mead with the standard coefficients (reflect 1, expand 2,
// contract 1/2, shrink 1/2).
SimplexResult nelder_mead(const Objective& f, const Point& start, double step, std::size_t max_iters,
                          double tol) {
  const std::size_t dim = start.size();
  std::vector<Point> vertex(dim + 1, start);
  std::vector<double> value(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) vertex[i + 1][i] += step;
  for (std::size_t i = 0; i <= dim; ++i) value[i] = f(vertex[i]);

  std::vector<std::size_t> order(dim + 1);
  SimplexResult out;
  auto affine = [&](const Point& from, const Point& to, double t) {
    Point p(dim);
    for (std::size_t j = 0; j < dim; ++j) p[j] = from[j] + t * (to[j] - from[j]);
    return p;
  };

  std::size_t iter = 0;
  for (; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return value[l] < value[r]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - (dim > 0 ? 1 : 0)];
    if (spread_small(value[worst], value[best], tol)) {
      out.converged = true;
      break;
    }

    Point centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += vertex[order[i]][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const Point reflected = affine(centroid, vertex[worst], -1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < value[best]) {
      const Point expanded = affine(centroid, vertex[worst], -2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        vertex[worst] = expanded;
        value[worst] = f_expanded;
      } else {
        vertex[worst] = reflected;
        value[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < value[second_worst]) {
      vertex[worst] = reflected;
      value[worst] = f_reflected;
      continue;
    }
    bool accepted = false;
    if (f_reflected < value[worst]) {
      const Point outside = affine(centroid, reflected, 0.5);
      const double f_outside = f(outside);
      if (f_outside <= f_reflected) {
        vertex[worst] = outside;
        value[worst] = f_outside;
        accepted = true;
      }
    } else {
      const Point inside = affine(centroid, vertex[worst], 0.5);
      const double f_inside = f(inside);
      if (f_inside < value[worst]) {
        vertex[worst] = inside;
        value[worst] = f_inside;
        accepted = true;
      }
    }
    if (!accepted) {
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == best) continue;
        vertex[i] = affine(vertex[best], vertex[i], 0.5);
        value[i] = f(vertex[i]);
      }
    }
  }

  const auto best_it = std::min_element(value.begin(), value.end());
  out.best = vertex[static_cast<std::size_t>(best_it - value.begin())];
  out.value = *best_it;
  out.iterations = iter;
  return out;
}

// Simplex run followed by restarts around the incumbent until a restart
// stops improving, all within one iteration budget.
SimplexResult minimize(const Objective& f, const Point& start, std::size_t max_iters, double tol) {
  SimplexResult result = nelder_mead(f, start, 0.5, max_iters, tol);
  std::size_t used = result.iterations;
  for (int restart = 0; restart < 3 && result.converged && used < max_iters; ++restart) {
    SimplexResult polished = nelder_mead(f, result.best, 0.1, max_iters - used, tol);
    used += polished.iterations;
    const bool improved = polished.value < result.value - tol * std::max(1.0, std::fabs(result.value));
    if (polished.value <= result.value) {
      result.best = polished.best;
      result.value = polished.value;
    }
    result.converged = polished.converged;
    if (!improved) break;
  }
  result.iterations = used;
  return result;
}

// Maps the unconstrained search vector to model parameters: each free
// parameter is exp(eta), except theta = floor + exp(eta).
class SearchSpace {
 public:
  SearchSpace(const ModelSpec& spec, double floor) : spec_(spec), free_(spec.free_params()), floor_(floor) {}

  std::vector<double> to_values(const Point& eta) const {
    std::vector<double> v(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const double e = std::exp(std::clamp(eta[i], -300.0, 300.0));
      v[i] = free_[i] == Param::theta ? floor_ + e : e;
    }
    return v;
  }

  Point to_eta(const std::vector<double>& values) const {
    Point eta(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double v = free_[i] == Param::theta ? values[i] - floor_ : values[i];
      eta[i] = std::log(std::max(v, 1e-300));
    }
    return eta;
  }

  const std::vector<Param>& free() const { return free_; }
  const ModelSpec& spec() const { return spec_; }

 private:
  ModelSpec spec_;
  std::vector<Param> free_;
  double floor_;
};

// Largest accepted rounding error of the summed log-likelihood, in nats.
constexpr double kMaxRoundoff = 1e-4;

// Bound on the sum of |terms| that make up the log-likelihood. Each
// observation's log density is (a-1) ln K - (b-1) z + ln k - ln B, and far
// out in parameter space these terms are enormous and cancel. The bound
// uses the data extremes since z grows and |ln K| shrinks with x.
double cancellation_scale(const ErlParams& p, const Dataset& data) {
  const baseline::Terms lo = baseline::terms(data.min(), p.base());
  const baseline::Terms hi = baseline::terms(data.max(), p.base());
  const double log_t_lo = std::log((p.theta() + data.min()) / p.theta());
  const double log_t_hi = std::log((p.theta() + data.max()) / p.theta());
  const double beta_scale = std::fabs(specfun::log_gamma(p.a())) + std::fabs(specfun::log_gamma(p.b())) +
                            std::fabs(specfun::log_gamma(p.a() + p.b()));
  const double per_point = beta_scale + std::fabs(p.a() - 1.0) * std::fabs(lo.log_cdf) +
                           (std::fabs(p.b() - 1.0) + 1.0) * hi.z +
                           std::fabs(std::log(p.beta() * p.lambda() / p.theta())) +
                           std::fabs(2.0 * p.lambda() - 1.0) * std::max(std::fabs(log_t_lo), std::fabs(log_t_hi));
  return static_cast<double>(data.size()) * per_point;
}

// Objective for the search. Points where double precision cannot resolve
// the likelihood count as infeasible; otherwise the optimizer chases
// rounding noise toward absurd parameters.
double safe_nll(const ModelSpec& spec, std::span<const double> values, const Dataset& data) {
  try {
    const ErlParams p = spec.embed(values);
    const double scale = cancellation_scale(p, data);
    if (!(scale * std::numeric_limits<double>::epsilon() <= kMaxRoundoff)) return kInf;
    const double v = nll(p, data);
    return std::isfinite(v) ? v : kInf;
  } catch (const std::exception&) {
    return kInf;
  }
}

std::vector<double> heuristic_start(const SearchSpace& space, const Dataset& data, double floor) {
  std::vector<double> v;
  for (const Param p : space.free()) {
    if (p == Param::theta) {
      double theta = data.max() - data.min();
      if (!(theta > floor)) theta = floor + std::max(theta, 1.0);
      v.push_back(theta);
    } else {
      v.push_back(1.0);
    }
  }
  return v;
}

std::vector<double> random_start(const SearchSpace& space, double floor, std::uint64_t seed) {
  UniformStream stream(seed);
  const double lo = std::log(1e-2);
  const double hi = std::log(1e2);
  std::vector<double> v;
  for (const Param p : space.free()) {
    const double draw = std::exp(lo + (hi - lo) * stream.next());
    v.push_back(p == Param::theta ? floor + draw : draw);
  }
  return v;
}

// Lower-triangular Cholesky factor; empty on failure.
std::vector<double> cholesky(const std::vector<double>& m, std::size_t n) {
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = m[i * n + j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (!(sum > 0.0) || !std::isfinite(sum)) return {};
        l[i * n + i] = std::sqrt(sum);
      } else {
        l[i * n + j] = sum / l[j * n + j];
      }
    }
  }
  return l;
}

}  // namespace

Dataset::Dataset(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw DomainError("dataset is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("observation " + std::to_string(i) + " is not finite");
    }
  }
  std::sort(values_.begin(), values_.end());
}

double nll(const ErlParams& p, const Dataset& data) { return kernels::neg_log_likelihood(data.values(), p); }

ShapeScore score_ab(const ErlParams& p, const Dataset& data) {
  double sum_log_k = 0.0;
  double sum_log_upper = 0.0;
  for (const double x : data.values()) {
    const baseline::Terms t = baseline::terms(x, p.base());
    if (!t.inside) throw DomainError("observation outside the support");
    sum_log_k += t.log_cdf;
    sum_log_upper -= t.z;
  }
  const double n = static_cast<double>(data.size());
  const double psi_ab = specfun::digamma(p.a() + p.b());
  return {n * (psi_ab - specfun::digamma(p.a())) + sum_log_k,
          n * (psi_ab - specfun::digamma(p.b())) + sum_log_upper};
}

double theta_floor(const Dataset& data) {
  const double lo = data.min();
  if (lo >= 0.0) return 0.0;
  return -lo + 1e-9 * (1.0 + std::fabs(lo));
}

bool nested_in(const ModelSpec& inner, const ModelSpec& outer) {
  for (std::size_t i = 0; i < 5; ++i) {
    const auto& pinned = outer.constraints()[i];
    if (pinned && inner.constraints()[i] != pinned) return false;
  }
  return true;
}

FitResult fit_mle(const ModelSpec& spec, const Dataset& data, const FitConfig& cfg,
                  std::span<const ErlParams> warm) {
  const std::size_t k = spec.free_count();
  if (data.size() <= k) {
    throw DomainError(std::string(spec.name()) + " needs more than " + std::to_string(k) + " observations");
  }
  if (cfg.starts == 0 || cfg.max_iters == 0 || !(cfg.tol > 0.0)) {
    throw DomainError("fit configuration values must be positive");
  }

  const double floor = theta_floor(data);
  const SearchSpace space(spec, floor);
  const Objective objective = [&](const Point& eta) { return safe_nll(spec, space.to_values(eta), data); };

  std::vector<SimplexResult> runs(cfg.starts + warm.size());
  const auto starts = static_cast<std::int64_t>(runs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < starts; ++s) {
    const auto idx = static_cast<std::size_t>(s);
    std::vector<double> init;
    if (idx == 0) {
      init = heuristic_start(space, data, floor);
    } else if (idx < cfg.starts) {
      init = random_start(space, floor, derive_seed(cfg.seed, idx));
    } else {
      init = spec.extract(warm[idx - cfg.starts]);
    }
    runs[idx] = minimize(objective, space.to_eta(init), cfg.max_iters, cfg.tol);
  }

  // Lowest NLL wins; ties go to the lowest start index.
  std::size_t best = 0;
  for (std::size_t s = 1; s < runs.size(); ++s) {
    if (runs[s].value < runs[best].value) best = s;
  }
  const bool any_converged =
      std::any_of(runs.begin(), runs.end(), [](const SimplexResult& r) { return r.converged; });
  if (!std::isfinite(runs[best].value)) {
    throw NumericalError("no start reached a finite likelihood for " + std::string(spec.name()));
  }

  FitResult fit{spec,
                spec.embed(space.to_values(runs[best].best)),
                std::vector<std::optional<double>>(k),
                runs[best].value,
                data.size(),
                k,
                any_converged};
  if (fit.converged) fit.se = standard_errors(fit, data);
  return fit;
}

std::vector<std::optional<double>> standard_errors(const FitResult& fit, const Dataset& data) {
  const std::size_t k = fit.k;
  std::vector<std::optional<double>> se(k);
  const std::vector<double> center = fit.spec.extract(fit.params);
  if (center.size() != k) return se;

  std::vector<double> step(k);
  for (std::size_t i = 0; i < k; ++i) step[i] = 1e-4 * std::max(std::fabs(center[i]), 1e-8);

  auto f = [&](std::size_t i, double di, std::size_t j, double dj) {
    std::vector<double> p = center;
    p[i] += di;
    p[j] += dj;
    return safe_nll(fit.spec, p, data);
  };
  const double f0 = safe_nll(fit.spec, center, data);
  if (!std::isfinite(f0)) return se;

  std::vector<double> hessian(k * k, 0.0);
  std::vector<bool> usable(k, true);
  for (std::size_t i = 0; i < k; ++i) {
    const double up = f(i, step[i], i, 0.0);
    const double down = f(i, -step[i], i, 0.0);
    hessian[i * k + i] = (up - 2.0 * f0 + down) / (step[i] * step[i]);
    if (!std::isfinite(hessian[i * k + i])) usable[i] = false;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!usable[i] || !usable[j]) continue;
      const double pp = f(i, step[i], j, step[j]);
      const double pm = f(i, step[i], j, -step[j]);
      const double mp = f(i, -step[i], j, step[j]);
      const double mm = f(i, -step[i], j, -step[j]);
      const double h = (pp - pm - mp + mm) / (4.0 * step[i] * step[j]);
      if (!std::isfinite(h)) {
        usable[j] = false;
        continue;
      }
      hessian[i * k + j] = hessian[j * k + i] = h;
    }
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i) {
    if (usable[i]) keep.push_back(i);
  }
  const std::size_t m = keep.size();
  if (m == 0) return se;
  std::vector<double> sub(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) sub[r * m + c] = hessian[keep[r] * k + keep[c]];
  }
  const std::vector<double> l = cholesky(sub, m);
  if (l.empty()) return se;

  // diag(H^-1)_j = sum_i (L^-1)_{ij}^2; solve L y = e_j column by column.
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> y(m, 0.0);
    for (std::size_t i = j; i < m; ++i) {
      double sum = i == j ? 1.0 : 0.0;
      for (std::size_t q = j; q < i; ++q) sum -= l[i * m + q] * y[q];
      y[i] = sum / l[i * m + i];
    }
    double var = 0.0;
    for (std::size_t i = j; i < m; ++i) var += y[i] * y[i];
    if (std::isfinite(var) && var > 0.0) se[keep[j]] = std::sqrt(var);
  }
  return se;
}

}  // namespace erl
