// Serial reference loops against the OpenMP kernels, plus one full fit.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <vector>

#include "erl/distribution.hpp"
#include "erl/estimation.hpp"
#include "erl/kernels.hpp"

namespace {

const erl::ErlParams kParams(2.0, 1.5, 1.0, 1.0, 1.0);

std::vector<double> draws(std::size_t n) { return erl::sample(n, kParams, 42); }

std::vector<double> uniforms(std::size_t n) {
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return u;
}

template <void (*Kernel)(std::span<const double>, const erl::ErlParams&, std::span<double>)>
void elementwise(benchmark::State& state, const std::vector<double>& in) {
  std::vector<double> out(in.size());
  for (auto _ : state) {
    Kernel(in, kParams, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.size()));
}

void BM_log_pdf_serial(benchmark::State& s) { elementwise<erl::kernels::reference::log_pdf>(s, draws(s.range(0))); }
void BM_log_pdf_omp(benchmark::State& s) { elementwise<erl::kernels::log_pdf>(s, draws(s.range(0))); }
void BM_cdf_serial(benchmark::State& s) { elementwise<erl::kernels::reference::cdf>(s, draws(s.range(0))); }
void BM_cdf_omp(benchmark::State& s) { elementwise<erl::kernels::cdf>(s, draws(s.range(0))); }
void BM_quantile_serial(benchmark::State& s) { elementwise<erl::kernels::reference::quantile>(s, uniforms(s.range(0))); }
void BM_quantile_omp(benchmark::State& s) { elementwise<erl::kernels::quantile>(s, uniforms(s.range(0))); }

void BM_nll_serial(benchmark::State& state) {
  const auto x = draws(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(erl::kernels::reference::neg_log_likelihood(x, kParams));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_nll_omp(benchmark::State& state) {
  const auto x = draws(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(erl::kernels::neg_log_likelihood(x, kParams));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_fit_erld(benchmark::State& state) {
  const erl::Dataset data(draws(state.range(0)));
  erl::FitConfig cfg;
  cfg.starts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(erl::fit_mle(erl::ModelSpec(erl::Model::ERLD), data, cfg).nll);
}

}  // namespace

BENCHMARK(BM_log_pdf_serial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_log_pdf_omp)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_cdf_serial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_cdf_omp)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_quantile_serial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_quantile_omp)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_nll_serial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_nll_omp)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_fit_erld)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
