#include <benchmark/benchmark.h>

#include "salbp3pm/encoder.hpp"
#include "salbp3pm/precedence.hpp"

using namespace salbp3pm;

namespace {

Instance sized(int n) {
  RandomInstanceParams p;
  p.tasks = n;
  p.stations = std::max(2, n / 3);
  p.cycle_time = 3 * n / p.stations + 4;
  p.edge_probability = 0.2;
  return random_instance(p, 7, "bench");
}

void BM_Closure(benchmark::State& state) {
  const auto inst = sized(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_closure(inst));
}

void BM_Encode(benchmark::State& state, EncoderKind kind) {
  const auto inst = sized(static_cast<int>(state.range(0)));
  const auto closure = compute_closure(inst);
  std::size_t clauses = 0;
  for (auto _ : state) {
    auto enc = encode_base(kind, inst, closure);
    clauses = enc.formula.clause_count();
    benchmark::DoNotOptimize(enc);
  }
  state.counters["clauses"] = static_cast<double>(clauses);
}

}  // namespace

BENCHMARK(BM_Closure)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK_CAPTURE(BM_Encode, org, EncoderKind::org)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK_CAPTURE(BM_Encode, cse, EncoderKind::cse)->RangeMultiplier(2)->Range(8, 32);
