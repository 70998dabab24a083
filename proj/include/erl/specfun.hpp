#pragma once

// Special functions behind the beta link: log-gamma, digamma, the beta
// function and the regularized incomplete beta function with its inverse.
// All functions are pure and safe to call concurrently.

namespace erl::specfun {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// psi(x) = Gamma'(x) / Gamma(x) for x > 0.
double digamma(double x);

/// B(a, b).
double beta_fn(double a, double b);

/// ln B(a, b), without forming B itself.
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) for x in [0, 1].
double reg_inc_beta(double x, double a, double b);

/// Same as reg_inc_beta but the caller supplies y = 1 - x as well. Use this
/// when 1 - x is known more precisely than x (upper tails).
double reg_inc_beta(double x, double y, double a, double b);

/// ln I_x(a, b), accurate deep in the lower tail where I underflows.
double log_reg_inc_beta(double x, double y, double a, double b);

/// Solution of I_x(a, b) = p together with its complement 1 - x, each
/// computed on the side where it is well conditioned.
struct BetaQuantile {
  double x;
  double one_minus_x;
};

/// Inverse of reg_inc_beta in x. Endpoints map exactly (0 -> 0, 1 -> 1).
/// Throws NumericalError if the residual exceeds 1e-10 after 100 iterations.
double inv_reg_inc_beta(double p, double a, double b);

/// Inverse returning both x and 1 - x.
BetaQuantile inv_reg_inc_beta_pair(double p, double a, double b);

}  // namespace erl::specfun
