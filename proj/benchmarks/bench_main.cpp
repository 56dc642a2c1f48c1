#include <benchmark/benchmark.h>

#include <random>

#include "mtlkit/eval.hpp"
#include "mtlkit/harness.hpp"
#include "mtlkit/measure.hpp"
#include "mtlkit/random.hpp"
#include "mtlkit/transform.hpp"

using namespace mtlkit;

namespace {

std::vector<Mtl> corpus(std::size_t count, std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomMtlConfig c;
  c.max_size = size;
  std::vector<Mtl> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_mtl(rng, c));
  return out;
}

std::vector<Signal> signals(std::size_t count, std::size_t pieces) {
  RandomSignalConfig c = default_signal_config();
  c.num_props = 2;
  c.max_pieces = pieces;
  std::vector<Signal> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_signal(i, c));
  return out;
}

void BM_SatSet(benchmark::State& st) {
  auto fs = corpus(64, static_cast<std::size_t>(st.range(0)), 1);
  auto ss = signals(16, 8);
  std::size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(mtl_satset(ss[i % ss.size()], fs[i % fs.size()]));
    ++i;
  }
}
BENCHMARK(BM_SatSet)->Arg(4)->Arg(8)->Arg(12);

void BM_SatSetPieces(benchmark::State& st) {
  Mtl f = parse_mtl("G[(0,1)] (p -> F[(0,1/2)] q) & (p U[(0,2)] (q S[(0,1]] p))");
  auto ss = signals(16, static_cast<std::size_t>(st.range(0)));
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(mtl_satset(ss[i++ % ss.size()], f));
}
BENCHMARK(BM_SatSetPieces)->RangeMultiplier(4)->Range(4, 256);

void BM_FoTruthSet(benchmark::State& st) {
  Fo phi = parse_fo("exists y. exists z. (x < y & y < z & z < x + 1 & P(y) & P(z))");
  RandomSignalConfig c = default_signal_config();
  c.prop_names = {"P"};
  Signal s = random_signal(3, c);
  for (auto _ : st) benchmark::DoNotOptimize(fo_truth_set(s, phi));
}
BENCHMARK(BM_FoTruthSet);

void BM_Separate(benchmark::State& st) {
  auto fs = corpus(32, static_cast<std::size_t>(st.range(0)), 2);
  std::size_t i = 0;
  for (auto _ : st) {
    try {
      benchmark::DoNotOptimize(separate(fs[i % fs.size()]));
    } catch (const BudgetExceeded&) {
    }
    ++i;
  }
}
BENCHMARK(BM_Separate)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SeparateHistory(benchmark::State& st) {
  Mtl f = parse_mtl("F H (p -> P[=1] p)");
  for (auto _ : st) benchmark::DoNotOptimize(separate(f));
}
BENCHMARK(BM_SeparateHistory)->Unit(benchmark::kMillisecond);

void BM_Decomposition(benchmark::State& st) {
  std::size_t n = static_cast<std::size_t>(st.range(0));
  DecompositionFormula d;
  for (std::size_t k = 0; k < n; ++k) {
    d.points.push_back(parse_mtl(k % 2 ? "q" : "p"));
    d.gaps.push_back(parse_mtl(k % 2 ? "!p" : "p & q"));
  }
  for (auto _ : st) benchmark::DoNotOptimize(decomposition_to_mtl(d));
}
BENCHMARK(BM_Decomposition)->DenseRange(1, 4);

void BM_FoToMtlTwoPoint(benchmark::State& st) {
  Fo phi = parse_fo("exists y. exists z. (x < y & y < z & z < x + 1 & P(y) & P(z))");
  for (auto _ : st) benchmark::DoNotOptimize(fo_to_mtl(phi));
}
BENCHMARK(BM_FoToMtlTwoPoint)->Unit(benchmark::kMillisecond);

void BM_Reach(benchmark::State& st) {
  auto fs = corpus(64, 12, 4);
  std::size_t i = 0;
  for (auto _ : st) {
    const Mtl& f = fs[i++ % fs.size()];
    benchmark::DoNotOptimize(future_reach(f));
    benchmark::DoNotOptimize(past_reach(f));
  }
}
BENCHMARK(BM_Reach);

}  // namespace

BENCHMARK_MAIN();
