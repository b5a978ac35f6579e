#include <benchmark/benchmark.h>

#include "clab/carleman.hpp"
#include "clab/fft.hpp"
#include "clab/forward_solver.hpp"
#include "clab/phase_symbols.hpp"
#include "clab/spectral.hpp"
#include "clab/test_fields.hpp"

using namespace clab;

namespace {

GridSpec tx_grid(std::size_t nt, std::size_t nx) {
    return GridSpec({Axis::time(nt, 4.0 / static_cast<double>(nt)), Axis::centered(nx, 1.0), Axis::centered(nx, 1.0)});
}

Field bump(const GridSpec& g) { return fields::bump_field(g, {{0.5, 0.0, 0.0}, {0.45, 0.3, 0.3}, 1.0}); }

ProblemParams params2() {
    ProblemParams p;
    p.n = 2;
    return p;
}

void BM_fft_roundtrip(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Field u = bump(tx_grid(n, n));
    for (auto _ : state) benchmark::DoNotOptimize(fft::inverse(fft::forward(u)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(u.size()));
}
BENCHMARK(BM_fft_roundtrip)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_apply_P(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Field u = bump(tx_grid(4 * n, n));
    const auto p = params2();
    for (auto _ : state) benchmark::DoNotOptimize(spectral::apply_P(p, u));
}
BENCHMARK(BM_apply_P)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_carleman_ratio(benchmark::State& state) {
    const Field u = bump(tx_grid(64, 32));
    const auto p = params2();
    for (auto _ : state) benchmark::DoNotOptimize(carleman::carleman_ratio(u, 40.0, p));
}
BENCHMARK(BM_carleman_ratio)->Unit(benchmark::kMillisecond);

void BM_bound_scan(benchmark::State& state) {
    const auto kind = static_cast<symbols::BoundKind>(state.range(0));
    const auto p = params2();
    symbols::SampleSpec spec;
    spec.samples = 10000;
    for (auto _ : state) benchmark::DoNotOptimize(symbols::verify_symbol_bounds(kind, p, spec));
    state.SetLabel(std::string(symbols::to_string(kind)));
}
BENCHMARK(BM_bound_scan)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_forward_solve(benchmark::State& state) {
    ucp::ForwardProblem fp;
    fp.params.n = static_cast<int>(state.range(0));
    fp.cells = static_cast<std::size_t>(state.range(1));
    fp.forcing_fn = [](double t, std::span<const double> y) { return t * (0.25 - y.back() * y.back()); };
    for (auto _ : state) benchmark::DoNotOptimize(ucp::solve_forward(fp, 1.0 / 64));
}
BENCHMARK(BM_forward_solve)->Args({1, 1280})->Args({2, 32})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
