#include <benchmark/benchmark.h>

#include "ltlplan/learner.hpp"
#include "ltlplan/planner.hpp"

using namespace ltlplan;

namespace {

const Alphabet kAb({"a", "b", "c"});

void BM_ParseNormalize(benchmark::State& state) {
  const std::string text = "(!(a | b) U (a & c)) & F b | F (G c)";
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalize(parse_ltl(text, kAb)));
  }
}
BENCHMARK(BM_ParseNormalize);

void BM_BuildLdba(benchmark::State& state) {
  LtlPtr f = parse_ltl("F (a & F (b & F c)) & G !b | F (G a)", kAb);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_ldba(f, kAb));
  }
}
BENCHMARK(BM_BuildLdba);

void BM_AcceptsLasso(benchmark::State& state) {
  Ldba m = build_ldba(parse_ltl("F (G a) | F (b & F c)", kAb), kAb);
  LassoWord w{{Assignment{2}, Assignment{0}}, {Assignment{1}, Assignment{3}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(accepts_lasso(m, w));
  }
}
BENCHMARK(BM_AcceptsLasso);

void BM_FormulaCacheBuild(benchmark::State& state) {
  Board b = Board::default_board();
  for (auto _ : state) {
    FormulaCache cache(b.alphabet(), b.possible_assignments());
    benchmark::DoNotOptimize(cache.entries().size());
  }
}
BENCHMARK(BM_FormulaCacheBuild);

void BM_ValueIteration(benchmark::State& state) {
  Board b = Board::default_board();
  Ldba m = build_ldba(
      parse_ltl("F (pawn & F (rook & F knight))", b.alphabet()),
      b.alphabet());
  FormulaCache cache(b.alphabet(), b.possible_assignments());
  auto runs = accepting_runs(m, m.initial);
  FormulaSequence seq =
      run_to_sequence(m, runs[0], b.possible_assignments(), cache,
                      default_truncation(runs[0]));
  for (auto _ : state) {
    benchmark::DoNotOptimize(value_iteration(b, seq, 0.98, 1e-6));
  }
}
BENCHMARK(BM_ValueIteration);

void BM_PlannerEpisode(benchmark::State& state) {
  Board b = Board::default_board();
  Ldba m = build_ldba(parse_ltl("F (queen & F knight) & G !pawn",
                                b.alphabet()),
                      b.alphabet());
  FormulaCache cache(b.alphabet(), b.possible_assignments());
  Planner planner(b, m, cache);
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(planner.execute(reset(b, rng)));
  }
}
BENCHMARK(BM_PlannerEpisode);

}  // namespace

BENCHMARK_MAIN();
