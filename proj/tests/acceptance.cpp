// Acceptance gate: one check per shipped guarantee, one PASS/FAIL line each.
// Run with no arguments for the full gate, or name individual checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "generators.hpp"
#include "ltlplan/errors.hpp"
#include "ltlplan/learner.hpp"
#include "ltlplan/planner.hpp"

using namespace ltlplan;

namespace {

struct Check {
  const char* name;
  std::function<bool(std::string&)> run;
};

// --- language equivalence ---------------------------------------------------

bool check_language_equivalence(std::string& detail) {
  Alphabet ab({"a", "b", "c"});
  auto lassos = testgen::all_lassos(ab, 3, 2);
  std::mt19937_64 rng(0xC0FFEE);
  const int kFormulas = 200;
  long long checked = 0;
  for (int i = 0; i < kFormulas; ++i) {
    LtlPtr f = testgen::random_fragment(ab, 3, rng);
    Ldba m = build_ldba(f, ab);
    for (const auto& w : lassos) {
      ++checked;
      if (accepts_lasso(m, w) != satisfies_lasso(w, f)) {
        detail = "mismatch on " + to_string(f);
        return false;
      }
    }
  }
  detail = std::to_string(kFormulas) + " formulas x " +
           std::to_string(lassos.size()) + " lassos, " +
           std::to_string(checked) + " checks, 0 mismatches";
  return true;
}

// --- reference-automaton conformance ----------------------------------------

bool check_reference_automaton(std::string& detail) {
  Alphabet ab({"a", "b", "c"});
  Ldba m = build_ldba(parse_ltl("F (G a) | F (b & F c)", ab), ab);
  int accepting = 0, eps_edges = 0;
  for (int q = 0; q < m.num_states(); ++q) {
    accepting += m.states[q].accepting ? 1 : 0;
    eps_edges += static_cast<int>(m.eps[q].size());
  }
  auto runs = accepting_runs(m, m.initial);
  std::ostringstream os;
  os << m.num_states() << " states, " << eps_edges << " eps jump(s), "
     << accepting << " accepting, " << runs.size() << " accepting run(s)"
     << "; required: 5 states, 1 eps jump, 2 accepting, 2 runs";
  detail = os.str();
  return m.num_states() == 5 && eps_edges == 1 && accepting == 2 &&
         runs.size() == 2;
}

// --- beta-formula example ----------------------------------------------------

bool check_beta_example(std::string& detail) {
  Alphabet ab({"a", "b", "c", "d"});
  FormulaCache cache(ab, ab.all_assignments());
  AssignmentSet set{Assignment{1}, Assignment{3}, Assignment{9},
                    Assignment{11}};  // {a},{a,b},{a,d},{a,b,d}
  BoolPtr f = cache.lookup(set);
  detail = to_string(f) + " with complexity " +
           std::to_string(complexity(f));
  if (complexity(f) != 2) return false;
  AssignmentSet expect;  // a & !c over the full 2^4 universe
  for (std::uint32_t bits = 0; bits < 16; ++bits) {
    if ((bits & 1u) && !(bits & 4u)) expect.push_back(Assignment{bits});
  }
  return satisfying_set(f, ab.all_assignments()) == expect;
}

// --- formula-cache oracle -----------------------------------------------------

// Minimal complexity per realizable set, by independently enumerating every
// formula of the template grammar (all families, both polarities) and taking
// the true minimum - insensitive to the cache's insertion order.
std::map<AssignmentSet, int> template_minima(const Alphabet& ab,
                                             const AssignmentSet& universe,
                                             const TemplateParams& p) {
  const int n = ab.size();
  std::map<AssignmentSet, int> best;
  auto consider = [&](const BoolPtr& f) {
    AssignmentSet key = satisfying_set(f, universe);
    int c = complexity(f);
    auto [it, inserted] = best.emplace(std::move(key), c);
    if (!inserted && c < it->second) it->second = c;
  };
  auto var = [&](int i) { return BoolFormula::make_var(i, ab.prop(i)); };
  auto disjunction = [&](const std::vector<int>& vs) {
    std::vector<BoolPtr> cs;
    for (int v : vs) cs.push_back(var(v));
    return BoolFormula::make_or(std::move(cs));
  };
  auto conjunction = [&](const std::vector<int>& vs) {
    std::vector<BoolPtr> cs;
    for (int v : vs) cs.push_back(var(v));
    return BoolFormula::make_and(std::move(cs));
  };
  auto disjoint = [](const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a) {
      if (std::find(b.begin(), b.end(), x) != b.end()) return false;
    }
    return true;
  };
  consider(BoolFormula::make_false());
  consider(BoolFormula::make_true());
  for (int k = 1; k <= n - 1; ++k) {
    for (const auto& vs : k_subsets(n, k)) {
      consider(disjunction(vs));
      consider(BoolFormula::make_not(disjunction(vs)));
      consider(conjunction(vs));
      consider(BoolFormula::make_not(conjunction(vs)));
    }
  }
  for (int i = 2; i <= std::min(p.or_and_x, n - 1); ++i) {
    for (int j = 1; j <= std::min(p.or_and_y, n - 1); ++j) {
      for (const auto& v1 : k_subsets(n, i)) {
        for (const auto& v2 : k_subsets(n, j)) {
          if (!disjoint(v1, v2)) continue;
          BoolPtr f =
              BoolFormula::make_and({disjunction(v1), conjunction(v2)});
          consider(f);
          consider(BoolFormula::make_not(f));
        }
      }
    }
  }
  auto pos_and_not = [&](const BoolPtr& pos, const BoolPtr& neg) {
    consider(BoolFormula::make_and({pos, BoolFormula::make_not(neg)}));
    consider(BoolFormula::make_or({BoolFormula::make_not(pos), neg}));
  };
  for (int i = 2; i <= std::min(p.and_not_x, n - 1); ++i) {
    for (int j = 1; j <= std::min(p.and_not_y, n - 1); ++j) {
      for (const auto& v1 : k_subsets(n, i)) {
        for (const auto& v2 : k_subsets(n, j)) {
          if (disjoint(v1, v2)) pos_and_not(conjunction(v1), disjunction(v2));
        }
      }
    }
  }
  for (int i = 1; i <= std::min(p.or_not_x, n - 1); ++i) {
    for (int j = 1; j <= std::min(p.or_not_y, n - 1); ++j) {
      for (const auto& v1 : k_subsets(n, i)) {
        for (const auto& v2 : k_subsets(n, j)) {
          if (disjoint(v1, v2)) pos_and_not(disjunction(v1), disjunction(v2));
        }
      }
    }
  }
  for (int i = 1; i <= std::min(p.or_notz_x, n - 1); ++i) {
    for (int j = 2; j <= std::min(p.or_notz_y, n - 1); ++j) {
      auto groups = k_subsets(n, j);
      for (int k = 1; k <= p.or_notz_z; ++k) {
        for (const auto& pick :
             k_subsets(static_cast<int>(groups.size()), k)) {
          std::vector<BoolPtr> terms;
          for (int g : pick) terms.push_back(conjunction(groups[g]));
          BoolPtr neg = BoolFormula::make_or(std::move(terms));
          for (const auto& v1 : k_subsets(n, i)) {
            pos_and_not(disjunction(v1), neg);
          }
        }
      }
    }
  }
  return best;
}

bool check_cache_oracle(std::string& detail) {
  Board b = Board::default_board();
  AssignmentSet universe = b.possible_assignments();
  // The twelve realizable piece labels (the queried subsets exclude the
  // empty label, matching the published alphabet).
  AssignmentSet letters;
  for (Assignment a : universe) {
    if (a.bits != 0) letters.push_back(a);
  }
  FormulaCache cache(b.alphabet(), letters);
  auto minima = template_minima(b.alphabet(), letters, cache.params());
  for (const auto& [set, formula] : cache.entries()) {
    if (satisfying_set(formula, letters) != set) {
      detail = "cached entry failed round-trip: " + to_string(formula);
      return false;
    }
    auto it = minima.find(set);
    if (it == minima.end() || complexity(formula) != it->second) {
      detail = "suboptimal cached formula " + to_string(formula) + " (" +
               std::to_string(complexity(formula)) + " vs oracle " +
               std::to_string(it == minima.end() ? -1 : it->second) + ")";
      return false;
    }
  }
  long long lookups = 0;
  for (std::uint32_t mask = 0; mask < (1u << letters.size()); ++mask) {
    AssignmentSet set;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if ((mask >> i) & 1u) set.push_back(letters[i]);
    }
    BoolPtr f = cache.lookup(set);
    ++lookups;
    if (satisfying_set(f, letters) != set) {
      detail = "lookup failed round-trip at mask " + std::to_string(mask);
      return false;
    }
  }
  detail = std::to_string(cache.entries().size()) +
           " cached entries minimal, " + std::to_string(lookups) +
           " subset lookups round-tripped";
  return true;
}

// --- default-board labels -----------------------------------------------------

bool check_board_labels(std::string& detail) {
  Board b = Board::default_board();
  const Alphabet& ab = b.alphabet();
  auto mk = [&](std::initializer_list<const char*> props) {
    Assignment a{};
    for (const char* p : props) a.bits |= 1u << ab.index_of(p);
    return a;
  };
  AssignmentSet expected = {mk({"queen"}),
                            mk({"rook"}),
                            mk({"knight"}),
                            mk({"bishop"}),
                            mk({"pawn"}),
                            mk({"queen", "rook"}),
                            mk({"queen", "bishop"}),
                            mk({"queen", "pawn", "bishop"}),
                            mk({"queen", "pawn", "rook"}),
                            mk({"knight", "rook"}),
                            mk({"bishop", "rook"}),
                            mk({"knight", "bishop"})};
  normalize_set(expected);
  AssignmentSet actual;
  for (Assignment a : b.possible_assignments()) {
    if (a.bits != 0) actual.push_back(a);
  }
  detail = std::to_string(actual.size()) + " non-empty labels";
  return actual == expected;
}

// --- planner optimality oracle --------------------------------------------------

double product_optimum(const Board& b, const Ldba& m,
                       const std::vector<char>& universal, Square s, int q,
                       int horizon, double gamma,
                       std::map<std::tuple<int, int, int>, double>& memo) {
  if (horizon == 0) return 0.0;
  auto key = std::make_tuple(b.index(s), q, horizon);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  double best = -1.0;
  for (int a = 0; a < kNumActions; ++a) {
    EnvState next = step_env(b, {s, 0}, static_cast<Action>(a));
    int nq = m.step(q, b.label(next.pos));
    double val;
    if (nq == m.sink) {
      val = -1.0;
    } else if (universal[nq]) {
      val = 1.0;
    } else {
      val = gamma * product_optimum(b, m, universal, next.pos, nq,
                                    horizon - 1, gamma, memo);
    }
    best = std::max(best, val);
  }
  for (int nq : m.eps[q]) {
    double val = universal[nq]
                     ? 1.0
                     : gamma * product_optimum(b, m, universal, s, nq,
                                               horizon - 1, gamma, memo);
    best = std::max(best, val);
  }
  memo[key] = best;
  return best;
}

bool check_planner_oracle(std::string& detail) {
  Board b({Square{0, 2}, Square{2, 2}, Square{2, 0}, Square{0, 0},
           Square{1, 2}},
          3);
  PlannerParams params;
  params.horizon = 8;
  int compared = 0;
  for (const char* formula :
       {"F queen", "F bishop", "F (knight | rook)", "F (queen & F rook)",
        "F (rook & !pawn)", "F (bishop & !queen)"}) {
    Ldba m = build_ldba(parse_ltl(formula, b.alphabet()), b.alphabet());
    FormulaCache cache(b.alphabet(), b.possible_assignments());
    Planner planner(b, m, cache, params);
    std::map<std::tuple<int, int, int>, double> memo;
    for (Square s : b.empty_squares()) {
      double opt;
      double got;
      try {
        got = planner.execute({s, 0}).discounted_return;
      } catch (const UnsatisfiableTaskError&) {
        continue;
      }
      opt = std::max(product_optimum(b, m, planner.env_universally_accepting(),
                                     s, m.initial, params.horizon,
                                     params.gamma, memo),
                     0.0);
      if (std::fabs(got - opt) > 1e-6) {
        std::ostringstream os;
        os << formula << " from (" << s.x << "," << s.y << "): planner "
           << got << " vs optimum " << opt;
        detail = os.str();
        return false;
      }
      ++compared;
    }
  }
  detail = std::to_string(compared) + " (task, start) pairs within 1e-6";
  return true;
}

// --- suite bounds ---------------------------------------------------------------

bool check_suite_bounds(std::string& detail) {
  Board b = Board::default_board();
  const std::map<std::string, double> bounds = {
      {"phi1", 0.993}, {"phi2", 0.952}, {"phi3", 0.826},
      {"phi4", 0.927}, {"phi5", 0.743}, {"phi6", 0.936},
      {"phi7", 0.910}, {"phi_inf_1", 0.860}, {"phi_inf_2", 0.767}};
  std::map<std::string, std::pair<double, int>> agg;
  std::vector<std::string> problems;
  for (const char* path :
       {"configs/tasks/finite.txt", "configs/tasks/infinite.txt"}) {
    TaskSuite suite = TaskSuite::load_file(path);
    SuiteMetrics m = evaluate_suite(suite, b, 100, 5, 2024);
    for (const auto& row : m.rows) {
      agg[row.suite].first += row.sr;
      agg[row.suite].second += 1;
    }
    for (const auto& u : m.unsatisfiable) {
      problems.push_back("unsatisfiable: " + u);
    }
    for (const auto& u : m.unsupported) {
      problems.push_back("unsupported: " + u);
    }
  }
  std::ostringstream os;
  bool ok = problems.empty();
  for (const auto& [suite, bound] : bounds) {
    auto it = agg.find(suite);
    if (it == agg.end()) {
      os << suite << " missing; ";
      ok = false;
      continue;
    }
    double sr = it->second.first / it->second.second;
    os << suite << " " << sr << (sr >= bound ? ">=" : "<") << bound << "  ";
    if (sr < bound) ok = false;
  }
  for (const auto& p : problems) os << p << "; ";
  detail = os.str();
  return ok;
}

// --- learner sanity --------------------------------------------------------------

bool check_learner(std::string& detail) {
  Board b = Board::default_board();
  FormulaCache cache(b.alphabet(), b.possible_assignments());
  Learner learner(b, cache);
  std::mt19937_64 rng(derive_seed(31337, 0));
  learner.train({1}, 20000, rng);
  for (const auto& e : learner.log()) {
    double r = e.discounted_return;
    if (r != 0.0) {
      bool matched = false;
      for (int t = 0; t < learner.params().horizon && !matched; ++t) {
        matched = std::fabs(std::fabs(r) - std::pow(learner.params().gamma, t)) < 1e-9;
      }
      if (!matched) {
        detail = "episode return " + std::to_string(r) +
                 " is not a single discounted terminal reward";
        return false;
      }
    }
  }
  std::mt19937_64 eval_rng(derive_seed(31337, 1));
  double sr = learner.evaluate(1, 50, 10, eval_rng);
  std::ostringstream os;
  os << "held-out stage-1 SR " << sr << " (need >= 0.9)";
  detail = os.str();
  return sr >= 0.9;
}

// --- determinism -------------------------------------------------------------------

bool check_determinism(std::string& detail) {
  Board b = Board::default_board();
  TaskSuite suite = TaskSuite::load_file("configs/tasks/finite.txt");
  std::string first = evaluate_suite(suite, b, 25, 3, 555).to_csv();
  std::string second = evaluate_suite(suite, b, 25, 3, 555).to_csv();
  if (first != second) {
    detail = "metrics CSVs differ between identical runs";
    return false;
  }
  detail = "byte-identical CSVs (" + std::to_string(first.size()) +
           " bytes) across repeated runs";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Check> checks = {
      {"language-equivalence", check_language_equivalence},
      {"reference-automaton-conformance", check_reference_automaton},
      {"beta-formula-example", check_beta_example},
      {"formula-cache-oracle", check_cache_oracle},
      {"default-board-labels", check_board_labels},
      {"planner-optimality-oracle", check_planner_oracle},
      {"suite-bounds", check_suite_bounds},
      {"learner-sanity", check_learner},
      {"determinism", check_determinism},
  };
  int failures = 0;
  bool ran_any = false;
  for (const auto& check : checks) {
    if (argc > 1 && std::strcmp(argv[1], check.name) != 0) continue;
    ran_any = true;
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = check.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    std::cout << (ok ? "PASS" : "FAIL") << ": " << check.name << " ["
              << secs << "s] " << detail << "\n";
    failures += ok ? 0 : 1;
  }
  if (!ran_any) {
    std::cerr << "unknown check: " << argv[1] << "\n";
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
