#include <benchmark/benchmark.h>

#include "proxilift/function_space.hpp"
#include "proxilift/lp.hpp"
#include "proxilift/projection.hpp"
#include "proxilift/random.hpp"
#include "proxilift/selection.hpp"

using namespace proxilift;

namespace {

void BM_SolveLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng = trial_rng(1, 0);
  lp::Problem p(n);
  p.objective = uniform_vector(rng, n);
  for (int i = 0; i < 2 * n; ++i) p.add(uniform_vector(rng, n), lp::Relation::LessEqual, 1.0);
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e(i) = 1.0;
    p.add(e, lp::Relation::GreaterEqual, -5.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(p));
}
BENCHMARK(BM_SolveLp)->Arg(4)->Arg(8)->Arg(16);

void BM_Distance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Space x(n, state.range(1) ? NormKind::Sum : NormKind::Sup);
  Rng rng = trial_rng(2, 0);
  const auto j = random_subspace(rng, x, n / 2);
  const Vector v = uniform_vector(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(distance(j, v));
}
BENCHMARK(BM_Distance)->Args({3, 0})->Args({3, 1})->Args({8, 0})->Args({8, 1});

void BM_VerifySelection(benchmark::State& state) {
  const Space x(3, NormKind::Sup);
  Matrix b = Matrix::Zero(3, 1);
  b(0, 0) = 1.0;
  const Subspace j(x, b);
  const auto s = find_linear_selection(j);
  for (auto _ : state) benchmark::DoNotOptimize(verify_selection(j, s.selection->p));
}
BENCHMARK(BM_VerifySelection);

void BM_FindSelectionConstants(benchmark::State& state) {
  const Space x(3, NormKind::Sup);
  const auto j = Subspace::span(x, {Vector::Ones(3)});
  for (auto _ : state) benchmark::DoNotOptimize(find_linear_selection(j));
}
BENCHMARK(BM_FindSelectionConstants);

void BM_Star1D(benchmark::State& state) {
  const auto d = ClosedSet1D::parse("[0.2,0.4];[0.6,0.8]");
  const auto f = sample([](double t) { return t * t; }, aligned_grid(static_cast<int>(state.range(0)), d));
  for (auto _ : state) benchmark::DoNotOptimize(star_selection_1d(f, d));
}
BENCHMARK(BM_Star1D)->Arg(1025)->Arg(16385);

void BM_Star2D(benchmark::State& state) {
  const auto f = sample_2d([](double a, double b) { return a + b * b; }, static_cast<int>(state.range(0)));
  const auto d = parse_region("annulus:0.4,0.6");
  for (auto _ : state) benchmark::DoNotOptimize(star_selection_2d(f, d));
}
BENCHMARK(BM_Star2D)->Arg(33)->Arg(65);

}  // namespace

BENCHMARK_MAIN();
