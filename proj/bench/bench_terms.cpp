// Serial reference vs OpenMP construction of the Poincare terms. With a
// single hardware thread the two should be within noise of each other.

#include <benchmark/benchmark.h>

#include "modasym/poincare.hpp"

using namespace modasym;

namespace {

void build(benchmark::State& state, poincare::Exec exec) {
  poincare::PoincareOptions o;
  o.exec = exec;
  o.c_max = state.range(1);
  o.y_min = 0.9;
  o.enforce_tail = false;
  const PrecisionContext ctx{256, 1e-12};
  // The shared Kloosterman tables are cached on first use; keep that out of the timing.
  benchmark::DoNotOptimize(poincare::build_terms(6, state.range(0), o, ctx).data());
  for (auto _ : state) {
    auto terms = poincare::build_terms(6, state.range(0), o, ctx);
    benchmark::DoNotOptimize(terms.data());
  }
  state.SetLabel(exec == poincare::Exec::serial ? "serial" : "parallel");
}

void BM_TermsSerial(benchmark::State& s) { build(s, poincare::Exec::serial); }
void BM_TermsParallel(benchmark::State& s) { build(s, poincare::Exec::parallel); }

}  // namespace

BENCHMARK(BM_TermsSerial)->Args({2, 500})->Args({10, 500})->Args({2, 2000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TermsParallel)->Args({2, 500})->Args({10, 500})->Args({2, 2000})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
