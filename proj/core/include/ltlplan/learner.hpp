#pragma once

#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltlplan/planner.hpp"

namespace ltlplan {

struct LearnerParams {
  double alpha = 0.1;          // learning rate
  double gamma = 0.98;
  double epsilon_start = 1.0;  // linearly decayed exploration rate
  double epsilon_end = 0.05;
  int horizon = 100;
};

/// Tabular Q-learner over the sequence-MDP dynamics. Sequences are interned
/// by canonical key; there is no generalization across sequences. Action
/// values are keyed (square, sequence id, stage).
class Learner {
 public:
  Learner(const Board& board, const FormulaCache& cache,
          LearnerParams params = {});

  /// Draws a curriculum task. Stage 1: reach / reach-avoid with at most one
  /// avoid piece. Stage 2: avoid sets up to three pieces, two-step
  /// sequences, and reach-stay. Stage 3: the stage-2 families with longer
  /// persistence. Retries until the target set is realizable on the board.
  FormulaSequence sample_curriculum(int stage, std::mt19937_64& rng);

  struct LogEntry {
    int episode = 0;
    int stage = 0;
    int sequence_id = 0;
    double discounted_return = 0.0;
    int steps = 0;
    bool success = false;
  };

  /// Q-learning with epsilon-greedy exploration, linearly decayed across
  /// all episodes. One curriculum draw per episode.
  void train(const std::vector<int>& stages, int episodes_per_stage,
             std::mt19937_64& rng);

  const std::vector<LogEntry>& log() const { return log_; }
  std::string log_csv() const;  // episode,stage,sequence,return,steps,success

  /// Greedy action with the planner's tie order; unseen (square, sequence,
  /// stage) rows fall back to a uniform random valid action.
  int greedy_action(const FormulaSequence& seq, int sequence_id, Square s,
                    int stage, std::mt19937_64& rng) const;

  /// Runs the greedy policy on one task episode (no learning updates).
  EpisodeResult run_greedy(const FormulaSequence& seq, EnvState start,
                           std::mt19937_64& rng);

  /// Mean success rate of the greedy policy over freshly drawn tasks of the
  /// given curriculum stage.
  double evaluate(int stage, int num_tasks, int episodes_per_task,
                  std::mt19937_64& rng);

  /// Interns a sequence, returning its stable id.
  int intern(const FormulaSequence& seq);
  const FormulaSequence& sequence(int id) const { return sequences_[id]; }
  int num_sequences() const { return static_cast<int>(sequences_.size()); }

  std::string serialize() const;
  const LearnerParams& params() const { return params_; }

 private:
  struct Key {
    int square;
    int sequence;
    int stage;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return ((std::size_t)k.square * 1000003u + k.sequence) * 257u + k.stage;
    }
  };

  const std::vector<double>* find_row(const Key& k) const;
  std::vector<double>& row(const Key& k);

  const Board& board_;
  const FormulaCache& cache_;
  LearnerParams params_;
  AssignmentSet universe_;
  std::vector<FormulaSequence> sequences_;
  std::unordered_map<std::string, int> sequence_ids_;
  std::unordered_map<Key, std::vector<double>, KeyHash> q_;
  std::vector<LogEntry> log_;
};

}  // namespace ltlplan
