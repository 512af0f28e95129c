#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "zest/channels.hpp"
#include "zest/graphs.hpp"
#include "zest/linalg.hpp"
#include "zest/quantities.hpp"

using namespace zest;
using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

ComplexMatrix random_hermitian(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return linalg::hermitian_part(a);
}

}  // namespace

static void BM_Kron(benchmark::State& state) {
  std::mt19937 rng(1);
  const int n = static_cast<int>(state.range(0));
  const auto a = random_hermitian(rng, n);
  const auto b = random_hermitian(rng, n);
  for (auto _ : state) {
    auto k = linalg::kron(a, b);
    benchmark::DoNotOptimize(k.data());
  }
}
BENCHMARK(BM_Kron)->Arg(3)->Arg(9);

static void BM_PartialTrace(benchmark::State& state) {
  std::mt19937 rng(2);
  const int d = static_cast<int>(state.range(0));
  const auto m = random_hermitian(rng, d * d);
  for (auto _ : state) {
    auto t = linalg::partial_trace(m, d, d, linalg::Subsystem::A);
    benchmark::DoNotOptimize(t.data());
  }
}
BENCHMARK(BM_PartialTrace)->Arg(3)->Arg(9);

static void BM_HermitianEig(benchmark::State& state) {
  std::mt19937 rng(3);
  const int n = static_cast<int>(state.range(0));
  const auto m = random_hermitian(rng, n);
  for (auto _ : state) {
    auto eig = linalg::hermitian_eig(m);
    benchmark::DoNotOptimize(eig.eigenvalues.data());
  }
}
BENCHMARK(BM_HermitianEig)->Arg(9)->Arg(81)->Arg(162);

static void BM_Choi(benchmark::State& state) {
  const auto ch = channels::family_nalpha(0.5);
  for (auto _ : state) {
    auto cd = channels::choi(ch);
    benchmark::DoNotOptimize(cd.J.data());
  }
}
BENCHMARK(BM_Choi);

static void BM_NcGraph(benchmark::State& state) {
  const auto ch = channels::family_nalpha(0.5);
  for (auto _ : state) {
    auto s = graphs::ncgraph(ch);
    benchmark::DoNotOptimize(s.basis.data());
  }
}
BENCHMARK(BM_NcGraph);

static void BM_Theta(benchmark::State& state) {
  const auto s = graphs::ncgraph(channels::family_nalpha(std::numbers::pi / 4));
  for (auto _ : state) {
    auto res = quantities::theta(s, {});
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_Theta)->Unit(benchmark::kMillisecond);

static void BM_Upsilon(benchmark::State& state) {
  const auto ch = channels::family_nalpha(std::numbers::pi / 4);
  for (auto _ : state) {
    auto res = quantities::upsilon(ch, {});
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_Upsilon)->Unit(benchmark::kMillisecond);

static void BM_Sigma(benchmark::State& state) {
  const auto ch = channels::family_nalpha(std::numbers::pi / 4);
  for (auto _ : state) {
    auto res = quantities::sigma(ch, {});
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_Sigma)->Unit(benchmark::kMillisecond);

static void BM_SigmaTensorSquare(benchmark::State& state) {
  const auto ch = channels::family_nalpha(std::numbers::pi / 4);
  const auto sq = channels::tensor(ch, ch);
  for (auto _ : state) {
    auto res = quantities::sigma(sq, {});
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_SigmaTensorSquare)->Unit(benchmark::kSecond)->Iterations(1);

static void BM_Aram(benchmark::State& state) {
  const auto ch = channels::family_nalpha(std::numbers::pi / 4);
  for (auto _ : state) {
    auto res = quantities::aram(ch, {});
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_Aram)->Unit(benchmark::kMillisecond);

static void BM_FractionalPacking(benchmark::State& state) {
  const auto p = channels::pentagon_matrix();
  for (auto _ : state) {
    auto res = quantities::fractional_packing(p, {});
    benchmark::DoNotOptimize(res.value);
  }
}
BENCHMARK(BM_FractionalPacking)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
