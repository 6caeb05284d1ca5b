// Fast kernels against their reference/serial counterparts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "zsl/search.hpp"
#include "zsl/symmetry.hpp"
#include "zsl/zerosum.hpp"

using namespace zsl;

namespace {

std::vector<GroupMultiset> sample(std::size_t n, std::uint32_t size, std::uint64_t seed) {
  const GroupSpec g({3, 3, 3});
  std::mt19937_64 rng(seed);
  std::vector<GroupMultiset> out;
  for (std::size_t i = 0; i < n; ++i) {
    GroupMultiset a(g);
    for (std::uint32_t k = 0; k < size; ++k) a.add(rng() % 27);
    out.push_back(std::move(a));
  }
  return out;
}

void BM_CanonicalFast(benchmark::State& st) {
  const auto sets = sample(64, static_cast<std::uint32_t>(st.range(0)), 1);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(canonical_form(sets[i++ % sets.size()]));
}
BENCHMARK(BM_CanonicalFast)->Arg(6)->Arg(12)->Arg(17);

void BM_CanonicalReference(benchmark::State& st) {
  const auto sets = sample(64, static_cast<std::uint32_t>(st.range(0)), 1);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(canonical_form_reference(sets[i++ % sets.size()]));
}
BENCHMARK(BM_CanonicalReference)->Arg(6)->Arg(12)->Arg(17)->Unit(benchmark::kMillisecond);

void BM_DedupeSerial(benchmark::State& st) {
  const auto sets = sample(2000, 10, 2);
  for (auto _ : st) benchmark::DoNotOptimize(orbit_dedupe_serial(sets));
}
BENCHMARK(BM_DedupeSerial)->Unit(benchmark::kMillisecond);

void BM_DedupeParallel(benchmark::State& st) {
  const auto sets = sample(2000, 10, 2);
  omp_set_num_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(orbit_dedupe(sets));
  omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_DedupeParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Packing(benchmark::State& st) {
  const auto sets = sample(32, static_cast<std::uint32_t>(st.range(0)), 3);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(max_disjoint_zerosums(sets[i++ % sets.size()]));
}
BENCHMARK(BM_Packing)->Arg(10)->Arg(17)->Arg(24);

void BM_MinZerosum(benchmark::State& st) {
  const auto sets = sample(64, 14, 4);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(min_zerosum_length(sets[i++ % sets.size()]));
}
BENCHMARK(BM_MinZerosum);

void BM_ConstantDk2(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(compute_constant({GroupSpec({3, 3, 3}), Family::Dk, 2}));
}
BENCHMARK(BM_ConstantDk2)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
