// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "zxs/diagram.hpp"
#include "zxs/lattice.hpp"
#include "zxs/surgery.hpp"
#include "zxs/tensor.hpp"

using namespace zxs;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (auto& x : m.data()) x = {g(rng), g(rng)};
  return m;
}

template <Matrix (*F)(const Matrix&, const Matrix&)>
void BM_matmul(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Matrix a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(F(a, b));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <Matrix (*F)(const Matrix&, const Matrix&)>
void BM_kron(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const Matrix a = random_matrix(n, n, 3), b = random_matrix(32, 32, 4);
  for (auto _ : st) benchmark::DoNotOptimize(F(a, b));
}

void BM_branches_serial(benchmark::State& st) {
  const Procedure p = builtin_procedure("cnot-bellpair");
  for (auto _ : st) benchmark::DoNotOptimize(serial::enumerate_branches(p));
}

void BM_branches_parallel(benchmark::State& st) {
  const Procedure p = builtin_procedure("cnot-bellpair");
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_branches(p));
}

void BM_channel_rough_merge(benchmark::State& st) {
  const int h = static_cast<int>(st.range(0));
  for (auto _ : st)
    benchmark::DoNotOptimize(extract_logical_channel(PhysicalOp::merge, SurgeryKind::rough, Convention::correct_first, h, h));
}

}  // namespace

BENCHMARK(BM_matmul<serial::matmul>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_matmul<parallel::matmul>)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_kron<serial::kron>)->Arg(16)->Arg(64);
BENCHMARK(BM_kron<parallel::kron>)->Arg(16)->Arg(64);
BENCHMARK(BM_branches_serial);
BENCHMARK(BM_branches_parallel);
BENCHMARK(BM_channel_rough_merge)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
