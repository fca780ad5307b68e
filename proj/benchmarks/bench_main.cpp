#include <benchmark/benchmark.h>

#include "opdisk/kahler.hpp"
#include "opdisk/moment.hpp"

namespace {

using opdisk::Algebra;

void BM_FunCalcSqrt(benchmark::State& state) {
  const Algebra alg = Algebra::matrix(static_cast<int>(state.range(0)));
  const auto a = opdisk::sample(alg, 1, {opdisk::SampleStyle::kHermitian});
  const auto positive = a * a + opdisk::AlgebraElement::identity(alg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opdisk::fun_calc(positive, opdisk::SpectralFunction::kSqrt));
  }
}
BENCHMARK(BM_FunCalcSqrt)->Arg(2)->Arg(4)->Arg(6);

void BM_ExpToGroup(benchmark::State& state) {
  const Algebra alg = Algebra::matrix(static_cast<int>(state.range(0)));
  const auto a = opdisk::LieElement::sample(alg, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opdisk::exp_to_group(a, 0.5));
  }
}
BENCHMARK(BM_ExpToGroup)->Arg(2)->Arg(4)->Arg(6);

void BM_SectionSr(benchmark::State& state) {
  const Algebra alg = Algebra::matrix(static_cast<int>(state.range(0)));
  const auto q = opdisk::sample_point(alg, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opdisk::section_sr(q));
  }
}
BENCHMARK(BM_SectionSr)->Arg(2)->Arg(4)->Arg(6);

void BM_HilbertianProduct(benchmark::State& state) {
  const Algebra alg = Algebra::matrix(static_cast<int>(state.range(0)));
  const auto q = opdisk::sample_point(alg, 4);
  const auto X = opdisk::sample_tangent(q, 5);
  const auto Y = opdisk::sample_tangent(q, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opdisk::hilbertian_product(X, Y));
  }
}
BENCHMARK(BM_HilbertianProduct)->Arg(2)->Arg(4)->Arg(6);

void BM_CurvatureOracle(benchmark::State& state) {
  const Algebra alg = Algebra::matrix(3);
  const auto q = opdisk::sample_point(alg, 7);
  const auto X = opdisk::sample_tangent(q, 8);
  const auto Y = opdisk::sample_tangent(q, 9);
  const auto sigma = opdisk::AlgebraElement::identity(alg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(opdisk::curvature_fd_oracle(X, Y, sigma));
  }
}
BENCHMARK(BM_CurvatureOracle);

void BM_ConvexityWitness(benchmark::State& state) {
  const Algebra alg = Algebra::matrix(3);
  const auto a = opdisk::restricted_image(opdisk::sample_point(alg, 10));
  const auto b = opdisk::restricted_image(opdisk::sample_point(alg, 11));
  for (auto _ : state) {
    benchmark::DoNotOptimize(opdisk::convexity_witness(a, b, 0.5));
  }
}
BENCHMARK(BM_ConvexityWitness);

}  // namespace

BENCHMARK_MAIN();
