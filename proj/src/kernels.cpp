#include "erl/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <vector>

#include "erl/error.hpp"

namespace erl::kernels {
namespace {

void require_same_size(std::size_t in, std::size_t out) {
  if (in != out) throw DomainError("kernel output span size does not match input");
}

// Runs body(i) for i in [0, n). Exceptions must not escape an OpenMP
// region, so the first one is captured and rethrown after the loop.
template <class Body>
void parallel_index_loop(std::size_t n, Body&& body) {
  const auto count = static_cast<std::int64_t>(n);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 256) if (n >= kParallelThreshold)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(erl_kernel_error)
      {
        if (!error) error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

namespace reference {

void log_pdf(std::span<const double> x, const ErlParams& p, std::span<double> out) {
  require_same_size(x.size(), out.size());
  const LogDensity density(p);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = density(x[i]);
}

void cdf(std::span<const double> x, const ErlParams& p, std::span<double> out) {
  require_same_size(x.size(), out.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = erl::cdf(x[i], p);
}

void quantile(std::span<const double> u, const ErlParams& p, std::span<double> out) {
  require_same_size(u.size(), out.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = erl::quantile(u[i], p);
}

double neg_log_likelihood(std::span<const double> x, const ErlParams& p) {
  const LogDensity density(p);
  double sum = 0.0;
  for (const double xi : x) {
    const double lp = density(xi);
    if (!std::isfinite(lp)) return std::numeric_limits<double>::infinity();
    sum -= lp;
  }
  return sum;
}

}  // namespace reference

void log_pdf(std::span<const double> x, const ErlParams& p, std::span<double> out) {
  require_same_size(x.size(), out.size());
  const LogDensity density(p);
  parallel_index_loop(x.size(), [&](std::size_t i) { out[i] = density(x[i]); });
}

void cdf(std::span<const double> x, const ErlParams& p, std::span<double> out) {
  require_same_size(x.size(), out.size());
  parallel_index_loop(x.size(), [&](std::size_t i) { out[i] = erl::cdf(x[i], p); });
}

void quantile(std::span<const double> u, const ErlParams& p, std::span<double> out) {
  require_same_size(u.size(), out.size());
  parallel_index_loop(u.size(), [&](std::size_t i) { out[i] = erl::quantile(u[i], p); });
}

double neg_log_likelihood(std::span<const double> x, const ErlParams& p) {
  if (x.size() < kParallelThreshold) return reference::neg_log_likelihood(x, p);
  std::vector<double> terms(x.size());
  log_pdf(x, p, terms);
  double sum = 0.0;
  for (const double lp : terms) {
    if (!std::isfinite(lp)) return std::numeric_limits<double>::infinity();
    sum -= lp;
  }
  return sum;
}

}  // namespace erl::kernels
