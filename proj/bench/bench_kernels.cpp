// Mesh kernels: OpenMP rows vs a single thread vs the direct transcription.
// Arg = mesh step denominator (2 -> h = 1/2, 8 -> h = 1/8).

#include <benchmark/benchmark.h>

#include <map>

#include "hardy/kernels.hpp"

using namespace hardy;
namespace K = hardy::kernels;

namespace {

const Interval unit(0, 1);

const NodeTable& table(int inv_h) {
  static std::map<int, NodeTable> cache;
  auto it = cache.find(inv_h);
  if (it != cache.end()) return it->second;
  static const Weight u = Weight::power(unit, 1, 0.5, 1.8);
  static const Weight v = Weight::power(unit, 1, 0.5);
  static const Weight w = Weight::power(unit, 1, -0.5, 0.5);
  auto nodes = mesh_nodes(unit, left_end(unit), right_end(unit), {},
                          MeshLevel{1.0 / inv_h, 32}, false);
  return cache.emplace(inv_h, tabulate(u, v, &w, 0.6, left_end(unit),
                                       right_end(unit), nodes, {}))
      .first->second;
}

constexpr double p = 0.9, q = 0.5;

template <double (*F)(const NodeTable&, double, double, K::Exec), K::Exec E>
void fast(benchmark::State& st) {
  const NodeTable& t = table(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(F(t, p, q, E));
  st.counters["nodes"] = t.n();
}

template <double (*F)(const NodeTable&, double, double)>
void reference(benchmark::State& st) {
  const NodeTable& t = table(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(F(t, p, q));
  st.counters["nodes"] = t.n();
}

}  // namespace

BENCHMARK(fast<K::c1, K::Exec::parallel>)->Name("c1/parallel")->Arg(2)->Arg(8)->Arg(32);
BENCHMARK(fast<K::c1, K::Exec::serial>)->Name("c1/serial")->Arg(2)->Arg(8)->Arg(32);
BENCHMARK(reference<K::reference::c1>)->Name("c1/reference")->Arg(2)->Arg(4);

BENCHMARK(fast<K::c6, K::Exec::parallel>)->Name("c6/parallel")->Arg(2)->Arg(8)->Arg(32);
BENCHMARK(fast<K::c6, K::Exec::serial>)->Name("c6/serial")->Arg(2)->Arg(8)->Arg(32);
BENCHMARK(reference<K::reference::c6>)->Name("c6/reference")->Arg(2)->Arg(4);

BENCHMARK(fast<K::c5, K::Exec::parallel>)->Name("c5/parallel")->Arg(2)->Arg(8);
BENCHMARK(fast<K::c5, K::Exec::serial>)->Name("c5/serial")->Arg(2)->Arg(8);
BENCHMARK(reference<K::reference::c5>)->Name("c5/reference")->Arg(2);

BENCHMARK_MAIN();
