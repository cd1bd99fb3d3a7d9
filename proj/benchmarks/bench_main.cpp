#include <benchmark/benchmark.h>

#include <alat/cutproject.hpp>
#include <alat/ggt.hpp>
#include <alat/verify.hpp>

using namespace alat;

namespace {

void BM_EnumerateQuadLine(benchmark::State& state) {
  const Scheme s{SchemeFamily::QuadraticLine, 2, Window::parse("-5,5")};
  const double radius = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(s, radius).size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumerateQuadLine)->RangeMultiplier(4)->Range(100, 6400)->Complexity();

void BM_EnumerateHeis(benchmark::State& state) {
  const Scheme s{SchemeFamily::HeisQuadratic, 2, Window::symmetric_box(3, 1)};
  const double radius = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(s, radius).size());
}
BENCHMARK(BM_EnumerateHeis)->DenseRange(4, 8, 2);

void BM_PowerSet(benchmark::State& state) {
  const PointSet p = enumerate(Scheme{SchemeFamily::QuadraticLine, 2, Window::parse("-5,5")}, 200);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_set(p, k, 3).size());
}
BENCHMARK(BM_PowerSet)->DenseRange(2, 6, 2);

void BM_WordBallSL2Z(benchmark::State& state) {
  const auto G = WordGroup::sl2z();
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(word_ball(G, r).size());
}
BENCHMARK(BM_WordBallSL2Z)->DenseRange(4, 8, 2);

void BM_WordBallHeis(benchmark::State& state) {
  const auto G = WordGroup::heis_z();
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(word_ball(G, r).size());
}
BENCHMARK(BM_WordBallHeis)->DenseRange(6, 12, 3);

void BM_BSDistortion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bs_distortion(n, 2).constrained_length);
}
BENCHMARK(BM_BSDistortion)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_AG3Witness(benchmark::State& state) {
  const PointSet p = enumerate(Scheme{SchemeFamily::QuadraticLine, 2, Window::parse("-5,5")},
                               static_cast<double>(state.range(0)));
  const double R = delone_parameters(p).covering_radius;
  for (auto _ : state) benchmark::DoNotOptimize(find_ag3_witness(p, R).F.size());
}
BENCHMARK(BM_AG3Witness)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
