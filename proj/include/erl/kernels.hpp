#pragma once

// Batch kernels over observation vectors. The top-level functions are
// OpenMP-parallel; `reference` holds the serial loops they are tested
// against. Both produce bit-identical output: element results are
// independent and reductions are summed in index order.

#include <cstddef>
#include <span>

#include "erl/distribution.hpp"

namespace erl::kernels {

/// Below this many elements the parallel kernels run on one thread.
inline constexpr std::size_t kParallelThreshold = 2048;

void log_pdf(std::span<const double> x, const ErlParams& p, std::span<double> out);
void cdf(std::span<const double> x, const ErlParams& p, std::span<double> out);
/// Maps uniforms u in (0, 1) through the ERL quantile.
void quantile(std::span<const double> u, const ErlParams& p, std::span<double> out);
/// -sum ln g(x_i); +inf if any point is outside the support.
double neg_log_likelihood(std::span<const double> x, const ErlParams& p);

namespace reference {

void log_pdf(std::span<const double> x, const ErlParams& p, std::span<double> out);
void cdf(std::span<const double> x, const ErlParams& p, std::span<double> out);
void quantile(std::span<const double> u, const ErlParams& p, std::span<double> out);
double neg_log_likelihood(std::span<const double> x, const ErlParams& p);

}  // namespace reference
}  // namespace erl::kernels
