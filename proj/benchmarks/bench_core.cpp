#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "fuscalc/biset.hpp"
#include "fuscalc/idempotent.hpp"
#include "fuscalc/spectra.hpp"

using namespace fuscalc;
using namespace corpus;

namespace {

void BM_subgroup_enumeration(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    // fresh handle each round so the cache cannot answer
    Group G = Group::from_permutation_cycles(4, {{{1, 2, 3, 4}}, {{1, 2}}});
    state.ResumeTiming();
    benchmark::DoNotOptimize(subgroups(G).size());
  }
}
BENCHMARK(BM_subgroup_enumeration);

void BM_pair_basis_d8(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    Group S = Group::from_permutation_cycles(4, {{{1, 2, 3, 4}}, {{1, 3}}});
    state.ResumeTiming();
    benchmark::DoNotOptimize(pair_basis(S, S).size());
  }
}
BENCHMARK(BM_pair_basis_d8);

void BM_compose_d8(benchmark::State& state) {
  const Group& S = d8();
  const auto& basis = pair_basis(S, S);
  auto a = basis_element(S, S, basis.at(basis.size() / 3).rep);
  auto b = basis_element(S, S, basis.at(basis.size() / 2).rep);
  // warm the structure-constant cache once, then measure steady-state
  benchmark::DoNotOptimize(compose(a, b));
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_compose_d8);

void BM_mark_matrix_d8(benchmark::State& state) {
  const Group& S = d8();
  pair_basis(S, S);
  for (auto _ : state) benchmark::DoNotOptimize(mark_matrix(S, S));
}
BENCHMARK(BM_mark_matrix_d8);

void BM_solve_v4_a4(benchmark::State& state) {
  const auto& F = f_v4_a4();
  for (auto _ : state) benchmark::DoNotOptimize(char_idempotent_solve(F));
}
BENCHMARK(BM_solve_v4_a4);

void BM_solve_d8_s4(benchmark::State& state) {
  const auto& F = f_d8_s4();
  for (auto _ : state) benchmark::DoNotOptimize(char_idempotent_solve(F));
}
BENCHMARK(BM_solve_d8_s4);

void BM_iterate_s4_over_d8(benchmark::State& state) {
  const auto& F = f_d8_s4();
  auto start = group_as_biset(s4(), sylow(s4(), 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(char_idempotent_iterate(start, F, 16));
}
BENCHMARK(BM_iterate_s4_over_d8);

void BM_reconstruct_d8_s4(benchmark::State& state) {
  auto sp = spectrum_of(f_d8_s4());
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_fusion(sp.omega, 2));
}
BENCHMARK(BM_reconstruct_d8_s4);

}  // namespace

BENCHMARK_MAIN();
