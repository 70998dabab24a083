#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "erl/distribution.hpp"
#include "erl/submodels.hpp"

namespace erl {

/// Observations, stored sorted ascending.
class Dataset {
 public:
  /// Throws DomainError if empty or if any value is not finite.
  explicit Dataset(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

struct FitConfig {
  std::size_t starts = 20;       // multi-start count, including the heuristic start
  std::size_t max_iters = 2000;  // simplex iterations per start
  double tol = 1e-8;             // spread of NLL over the simplex, relative to max(1, |NLL|)
  std::uint64_t seed = 1;
};

struct FitResult {
  ModelSpec spec;
  ErlParams params;
  /// One entry per free parameter (ModelSpec::free_params order); empty
  /// when the standard error is unavailable.
  std::vector<std::optional<double>> se;
  double nll;
  std::size_t n;
  std::size_t k;
  bool converged;
};

/// -sum ln g(x_i; p). +inf if any observation is at or below -theta.
double nll(const ErlParams& p, const Dataset& data);

/// Analytic gradient of the log-likelihood in the beta-link shapes:
///   d/da = n [psi(a+b) - psi(a)] + sum ln K(x_i)
///   d/db = n [psi(a+b) - psi(b)] + sum ln(1 - K(x_i))
struct ShapeScore {
  double da;
  double db;
};

/// Throws DomainError if an observation lies outside the support.
ShapeScore score_ab(const ErlParams& p, const Dataset& data);

/// Lowest value theta may take so that every observation stays strictly
/// inside the support: 0 when min(x) >= 0, else -min(x) + 1e-9 (1 + |min(x)|).
double theta_floor(const Dataset& data);

/// Maximum-likelihood fit by multi-start Nelder-Mead in log-parameter
/// space. Starts run concurrently; the result does not depend on the
/// thread count. Throws DomainError when n <= k.
///
/// `warm` adds extra starts after the seeded ones (e.g. the optima of
/// nested sub-models); only their free values for `spec` are used.
FitResult fit_mle(const ModelSpec& spec, const Dataset& data, const FitConfig& cfg = {},
                  std::span<const ErlParams> warm = {});

/// True when every constraint of `outer` is also imposed, with the same
/// value, by `inner`, i.e. `inner` is a sub-model of `outer`.
bool nested_in(const ModelSpec& inner, const ModelSpec& outer);

/// Standard errors from the inverse of a centered finite-difference Hessian
/// of the NLL in the original parameterization. Parameters whose Hessian
/// row cannot be formed (e.g. theta pressed against its support bound), or
/// all parameters when the Hessian is not positive definite, come back empty.
std::vector<std::optional<double>> standard_errors(const FitResult& fit, const Dataset& data);

}  // namespace erl
