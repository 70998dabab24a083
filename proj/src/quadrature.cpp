#include "erl/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "erl/error.hpp"

namespace erl::quadrature {

Rule gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("Gauss-Legendre order must be at least 1");
  Rule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi's initial guess for the i-th largest root of P_n.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double dk = static_cast<double>(k);
        const double p2 = ((2.0 * dk - 1.0) * z * p1 - (dk - 1.0) * p0) / dk;
        p0 = p1;
        p1 = p2;
      }
      dp = dn * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = z;
    for (std::size_t k = 2; k <= n; ++k) {
      const double dk = static_cast<double>(k);
      const double p2 = ((2.0 * dk - 1.0) * z * p1 - (dk - 1.0) * p0) / dk;
      p0 = p1;
      p1 = p2;
    }
    dp = dn * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const Rule& cached_rule(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, Rule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  // std::map never relocates nodes, so the reference stays valid.
  return it->second;
}

double composite(const std::function<double(double)>& f, double lo, double hi,
                 std::size_t panels, std::size_t n) {
  if (panels == 0) throw DomainError("composite quadrature needs at least one panel");
  const Rule& rule = cached_rule(n);
  const double width = (hi - lo) / static_cast<double>(panels);
  const double half = 0.5 * width;
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = lo + (static_cast<double>(p) + 0.5) * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += panel * half;
  }
  return total;
}

}  // namespace erl::quadrature
