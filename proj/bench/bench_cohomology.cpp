// Serial reference vs OpenMP kernels on the cochain computations.
#include <benchmark/benchmark.h>

#include "latkit/classify.hpp"
#include "latkit/cohomology.hpp"
#include "latkit/constructions.hpp"

using namespace latkit;

namespace {

GLattice weyl_b3_lattice() {
  return intermediate(std::vector<DynkinType>{DynkinType::make(Family::B, 3)}, {}).lattice();
}

GLattice norm_quotient_2_3() {
  std::vector<IntMatrix> gens;
  for (int k = 0; k < 3; ++k) {
    IntMatrix g = IntMatrix::identity(3);
    g(k, k) = -1;
    gens.push_back(g);
  }
  return j_gamma(FinGroup::close(gens));
}

CohomologyOptions mode(const benchmark::State& st) {
  CohomologyOptions o;
  o.parallel = st.range(0) != 0;
  return o;
}

void BM_BarCoboundary(benchmark::State& st) {
  GLattice l = weyl_b3_lattice();
  std::vector<std::size_t> all(l.group().order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto opt = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(bar_coboundary(l, all, 2, opt));
}

void BM_H2(benchmark::State& st) {
  GLattice l = weyl_b3_lattice();
  const auto opt = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(h_n(l, 2, opt));
}

void BM_Sha2(benchmark::State& st) {
  GLattice l = norm_quotient_2_3();
  const auto opt = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(sha2(l, opt));
}

void BM_PeriodicH2(benchmark::State& st) {
  GLattice l = norm_quotient_2_3();
  const auto opt = mode(st);
  for (auto _ : st) benchmark::DoNotOptimize(periodic_h_n(l, 2, opt));
}

}  // namespace

// argument 0 = serial reference, 1 = OpenMP
BENCHMARK(BM_BarCoboundary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_H2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sha2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PeriodicH2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
