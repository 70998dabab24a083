#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace erl::quadrature {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes ascending. n >= 1.
Rule gauss_legendre(std::size_t n);

/// Cached rule for the orders used by the distribution code.
const Rule& cached_rule(std::size_t n);

/// Composite rule: [lo, hi] split into `panels` equal panels, each integrated
/// with the n-point rule. Total node count is panels * n.
double composite(const std::function<double(double)>& f, double lo, double hi,
                 std::size_t panels, std::size_t n);

}  // namespace erl::quadrature
