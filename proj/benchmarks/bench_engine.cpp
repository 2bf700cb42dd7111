#include <benchmark/benchmark.h>

#include <random>

#include "superforms/berezin.hpp"
#include "superforms/dsl/eval.hpp"
#include "superforms/equivariant.hpp"
#include "test_support.hpp"

using namespace superforms;

namespace {

TablePtr table(const std::vector<std::string>& even, const std::vector<std::string>& odd) {
  std::vector<Generator> g;
  for (const auto& n : even) g.push_back({n, Parity::Even, Role::Coordinate, ""});
  for (const auto& n : odd) g.push_back({n, Parity::Odd, Role::Coordinate, ""});
  return VariableTable::make(g);
}

void BM_ScalarRationalArithmetic(benchmark::State& state) {
  Scalar z = Scalar::param("z"), w = Scalar::param("w");
  Scalar a = (z * z + Scalar(3) * w) / (z - w + Scalar::i());
  Scalar b = (w * w - z) / (z * w + Scalar(2));
  for (auto _ : state) benchmark::DoNotOptimize((a + b) * (a - b) / (a * b + Scalar(1)));
}
BENCHMARK(BM_ScalarRationalArithmetic);

void BM_GrassmannProduct(benchmark::State& state) {
  size_t n = static_cast<size_t>(state.range(0));
  std::vector<std::string> odd;
  for (size_t j = 0; j < n; ++j) odd.push_back("t" + std::to_string(j));
  auto t = table({"x"}, odd);
  std::mt19937 rng(1);
  SuperFunction f = superforms::testing::random_function(rng, t, 0, 24);
  SuperFunction g = superforms::testing::random_function(rng, t, 0, 24);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_GrassmannProduct)->Arg(4)->Arg(8)->Arg(12);

void BM_BerezinIntegral(benchmark::State& state) {
  auto t = table({"x", "y"}, {"t1", "t2", "t3", "t4"});
  std::mt19937 rng(2);
  GaussianKernel k;
  k.set_a(0, 0, Scalar(1));
  k.set_a(1, 1, Scalar(2));
  k.set_a(0, 1, Scalar(1));  // det 1
  SuperFunction f = SuperFunction::kernel(t, k) * superforms::testing::random_function(rng, t, 0, 10);
  IntegrationSpec spec;
  spec.variables = {"x", "y", "t1", "t2", "t3", "t4"};
  for (auto _ : state) benchmark::DoNotOptimize(integrate_superspace(f, spec));
}
BENCHMARK(BM_BerezinIntegral);

void BM_Berezinian22(benchmark::State& state) {
  auto t = table({}, {"c1", "c2"});
  SuperMatrix m = SuperMatrix::identity(SuperMatrix::standard_basis(2, 2), t);
  m.at(0, 1) = SuperFunction::constant(t, Scalar(3));
  m.at(2, 3) = SuperFunction::constant(t, Scalar(2));
  m.at(0, 2) = SuperFunction::var(t, "c1");
  m.at(3, 1) = SuperFunction::var(t, "c2");
  for (auto _ : state) benchmark::DoNotOptimize(berezinian(m));
}
BENCHMARK(BM_Berezinian22);

void BM_ThomForm(benchmark::State& state, const char* name) {
  LinearAction a = *dsl::registered_action(name);
  auto x = a.generic_element();
  for (auto _ : state) benchmark::DoNotOptimize(mathai_quillen_thom(a, x));
}
BENCHMARK_CAPTURE(BM_ThomForm, rot02, "rot02");
BENCHMARK_CAPTURE(BM_ThomForm, rot22, "rot22");

void BM_Localization(benchmark::State& state) {
  LinearAction a = *dsl::registered_action("rot22");
  auto x = a.generic_element();
  SuperFunction theta = mathai_quillen_thom(a, x).theta;
  for (auto _ : state) benchmark::DoNotOptimize(localize_linear(a, x, theta));
}
BENCHMARK(BM_Localization);

}  // namespace

BENCHMARK_MAIN();
