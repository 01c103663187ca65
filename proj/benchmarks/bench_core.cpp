#include <benchmark/benchmark.h>

#include "gauges/graded.hpp"
#include "gauges/rings.hpp"
#include "gauges/rng.hpp"

using namespace gauges;

namespace {

const CoeffField Q{};

Series dense_series(int terms, std::uint64_t seed) {
  Rng rng(seed);
  Series s = Series::zero(2, Q);
  for (int t = 0; t < terms; ++t)
    s = s + Series::monomial(Coeff(Rat(rng.range(-9, 9)), Q),
                             {rng.range(-4, 4), rng.range(-4, 4)});
  return s;
}

const Example51& ctx() {
  static Example51 c = build_example51(Rat(1, 4));
  return c;
}

}  // namespace

static void SeriesMultiply(benchmark::State& state) {
  Series a = dense_series(static_cast<int>(state.range(0)), 1);
  Series b = dense_series(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    Series c = a * b;
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SeriesMultiply)->Range(4, 64)->Complexity();

static void HenselSqrt(benchmark::State& state) {
  Series u = parse_series("1 + x", 2, {"x", "y"}, Q);
  Value target = parse_value({std::to_string(state.range(0)), "0"});
  for (auto _ : state) {
    Series r = hensel_sqrt(u, target);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(HenselSqrt)->Arg(8)->Arg(16)->Arg(32);

static void QuaternionInverse(benchmark::State& state) {
  Rng rng(3);
  Element z = sample_element(ctx().D, rng);
  while (el_is_zero(z)) z = sample_element(ctx().D, rng);
  for (auto _ : state) {
    try {
      Element zi = quaternion_inverse(ctx().D, z);
      benchmark::DoNotOptimize(zi);
    } catch (const DivisionByZero&) {
    }
  }
}
BENCHMARK(QuaternionInverse);

static void GaugeEvaluate(benchmark::State& state) {
  Rng rng(4);
  std::vector<Element> samples;
  for (int i = 0; i < 64; ++i) samples.push_back(sample_element(ctx().D, rng));
  size_t i = 0;
  for (auto _ : state) {
    ExtValue v = evaluate(ctx().alpha, samples[i++ % samples.size()]);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(GaugeEvaluate);

static void DubrovinMembership(benchmark::State& state) {
  Rng rng(5);
  std::vector<Element> samples;
  for (int i = 0; i < 64; ++i) samples.push_back(sample_element(ctx().D, rng));
  size_t i = 0;
  for (auto _ : state) {
    bool m = dubrovin_membership_ex51(ctx(), 1, samples[i++ % samples.size()]);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(DubrovinMembership);

static void CondensedRadical(benchmark::State& state) {
  GradedAlgebra G = gr_of(ctx().alpha);
  for (auto _ : state) {
    KAlgebra C = condensed(G);
    auto J = radical(C);
    benchmark::DoNotOptimize(J);
  }
}
BENCHMARK(CondensedRadical);

static void VerifyGaugeFull(benchmark::State& state) {
  for (auto _ : state) {
    VerifyReport rep = verify_gauge(ctx().alpha, 2);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(VerifyGaugeFull);

static void BuildTower(benchmark::State& state) {
  for (auto _ : state) {
    Example51 c = build_example51(Rat(1, 4));
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BuildTower);

BENCHMARK_MAIN();
