#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ltlplan/chessworld.hpp"
#include "ltlplan/formula_cache.hpp"
#include "ltlplan/ldba.hpp"
#include "ltlplan/runs.hpp"

namespace ltlplan {

/// splitmix64; used to derive independent stream seeds from the one
/// user-facing seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct PlannerParams {
  double gamma = 0.98;
  double tol = 1e-6;
  int horizon = 100;
  int min_persist_steps = 10;  // FG adjudication: observed post-entry steps
};

/// Index of the epsilon action in the extended action space
/// (N..NW, stay, epsilon); epsilon is only available on EpsilonStep stages.
inline constexpr int kEpsilonAction = kNumActions;
inline constexpr int kNumExtActions = kNumActions + 1;

/// One transition of the sequence-conditioned MDP. Stages 0..n-1 are the
/// sequence items, n is the absorbing success stage, n+1 the absorbing
/// failure stage.
struct SeqTransition {
  Square pos;
  int stage = 0;
  double reward = 0.0;
  bool valid = true;  // false: action unavailable at this stage
};

int success_stage(const FormulaSequence& seq);
int failure_stage(const FormulaSequence& seq);

/// Deterministic transition function: moving onto a beta-minus label fails
/// (-1), onto a beta-plus label advances; completing the final item yields
/// +1 and either enters success (terminal sequences) or re-enters the loop
/// at the loopback stage. EpsilonStep stages advance only via the epsilon
/// action.
SeqTransition advance_sequence(const Board& b, const FormulaSequence& seq,
                               Square pos, int stage, int action);

/// Converged state values of the sequence MDP, indexed by (stage, square).
struct ValueTable {
  int num_items = 0;
  int board_squares = 0;
  std::vector<double> v;  // (num_items + 2) * board_squares

  double at(int stage, int square_index) const {
    return v[stage * board_squares + square_index];
  }
};

/// Value iteration to sup-norm Bellman residual < tol.
ValueTable value_iteration(const Board& b, const FormulaSequence& seq,
                           double gamma, double tol);

struct EpisodeResult {
  bool success = false;
  double discounted_return = 0.0;
  int steps = 0;
  std::vector<Square> squares;        // visited squares, including start
  std::vector<int> ldba_states;       // q after each step
  std::vector<std::pair<int, int>> recomputations;  // (step, run index)
};

/// Planning facade over one (board, automaton) pair. Value tables are
/// cached per canonical sequence, since runs are re-selected whenever the
/// automaton state changes.
class Planner {
 public:
  Planner(const Board& board, const Ldba& ldba, const FormulaCache& cache,
          PlannerParams params = {});

  struct Selection {
    int run_index = -1;
    FormulaSequence seq;
    std::shared_ptr<const ValueTable> table;
    double value = 0.0;
  };

  /// Best feasible accepting run from automaton state q for an agent on s:
  /// argmax of V(s, stage 0), ties broken by run enumeration order.
  /// Throws UnsatisfiableTaskError when no feasible run exists.
  Selection select_run(Square s, int q);

  /// Greedy execution with run recomputation on every automaton-state
  /// change. The initial square's label is not consumed: the trace starts
  /// with the label of the first square entered by an action. Episode ends
  /// on reaching the rejecting sink, on co-safety success, or at the
  /// horizon (where persistence/recurrence success is adjudicated).
  EpisodeResult execute(EnvState start);

  const PlannerParams& params() const { return params_; }

  /// States from which every continuation within the environment's
  /// assignment universe stays accepting (co-safety success set).
  const std::vector<char>& env_universally_accepting() const {
    return universal_;
  }

 private:
  std::shared_ptr<const ValueTable> table_for(const FormulaSequence& seq);

  const Board& board_;
  const Ldba& ldba_;
  const FormulaCache& cache_;
  PlannerParams params_;
  AssignmentSet universe_;
  std::vector<char> universal_;
  std::map<std::string, std::shared_ptr<const ValueTable>> tables_;
};

/// Parsed task file: suite headers in brackets, one formula per line.
struct TaskSuite {
  struct Task {
    std::string suite;
    std::string text;
  };
  std::vector<Task> tasks;

  static TaskSuite parse(const std::string& text);
  static TaskSuite load_file(const std::string& path);
};

struct MetricsRow {
  std::string suite;
  std::string task;
  std::uint64_t seed = 0;
  double sr = 0.0;
  double mean_return = 0.0;
  int episodes = 0;
};

struct SuiteMetrics {
  std::vector<MetricsRow> rows;
  std::vector<std::string> unsatisfiable;  // reported, never scored
  std::vector<std::string> unsupported;    // out-of-fragment formulas

  std::string to_csv() const;   // suite,task,seed,sr,mean_return,episodes
  std::string to_json() const;
};

/// Exact-planner evaluation: `episodes` episodes for each of `num_seeds`
/// derived seeds per task. Unsatisfiable or out-of-fragment tasks are
/// recorded separately instead of being scored.
SuiteMetrics evaluate_suite(const TaskSuite& suite, const Board& b,
                            int episodes, int num_seeds, std::uint64_t seed,
                            PlannerParams params = {});

}  // namespace ltlplan
