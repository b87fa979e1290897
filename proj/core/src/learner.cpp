#include "ltlplan/learner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltlplan/errors.hpp"

namespace ltlplan {

namespace {

bool action_valid(const FormulaSequence& seq, int stage, int action) {
  if (action < kNumActions) return true;
  return stage < static_cast<int>(seq.items.size()) &&
         seq.items[stage].is_eps;
}

}  // namespace

Learner::Learner(const Board& board, const FormulaCache& cache,
                 LearnerParams params)
    : board_(board), cache_(cache), params_(params) {
  universe_ = board_.possible_assignments();
}

int Learner::intern(const FormulaSequence& seq) {
  std::string key = seq.canonical_key();
  auto it = sequence_ids_.find(key);
  if (it != sequence_ids_.end()) return it->second;
  int id = static_cast<int>(sequences_.size());
  sequences_.push_back(seq);
  sequence_ids_.emplace(std::move(key), id);
  return id;
}

FormulaSequence Learner::sample_curriculum(int stage, std::mt19937_64& rng) {
  if (stage < 1 || stage > 3) throw ConfigError("curriculum stage must be 1..3");
  const int num_props = board_.alphabet().size();
  std::uniform_int_distribution<int> prop(0, num_props - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  auto sat_of = [&](std::uint32_t include_mask, bool conj) {
    AssignmentSet out;
    for (Assignment a : universe_) {
      bool hit = conj ? (a.bits & include_mask) == include_mask
                      : (a.bits & include_mask) != 0;
      if (hit) out.push_back(a);
    }
    return out;
  };

  // One reach obligation: target mask (disjunction or conjunction of 1-2
  // props), avoid mask of up to `max_avoid` other props.
  auto draw_pair = [&](int max_avoid) -> SequenceItem {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::uint32_t target = 1u << prop(rng);
      bool conj = false;
      if (coin(rng) < 0.4) {
        target |= 1u << prop(rng);
        conj = coin(rng) < 0.5;
      }
      AssignmentSet plus = sat_of(target, conj);
      if (plus.empty()) continue;
      std::uint32_t avoid = 0;
      int n_avoid = std::uniform_int_distribution<int>(0, max_avoid)(rng);
      for (int i = 0; i < n_avoid; ++i) {
        std::uint32_t p = 1u << prop(rng);
        if (!(p & target)) avoid |= p;
      }
      SequenceItem item;
      item.plus_set = plus;
      for (Assignment a : universe_) {
        if ((a.bits & avoid) != 0 && !set_contains(plus, a)) {
          item.minus_set.push_back(a);
        }
      }
      item.beta_plus = cache_.lookup(item.plus_set);
      item.beta_minus = cache_.lookup(item.minus_set);
      return item;
    }
    throw ConfigError("curriculum sampling failed to find a feasible target");
  };

  FormulaSequence seq;
  if (stage == 1) {
    seq.items.push_back(draw_pair(1));
    seq.terminal = true;
    seq.loopback = 0;
    return seq;
  }

  // Stages 2 and 3 share the task families; stage 3 unrolls persistence
  // further.
  double u = coin(rng);
  if (u < 0.4) {  // reach-avoid, up to three avoid pieces
    seq.items.push_back(draw_pair(3));
    seq.terminal = true;
    seq.loopback = 0;
  } else if (u < 0.7) {  // two-step sequenced reach
    seq.items.push_back(draw_pair(2));
    seq.items.push_back(draw_pair(2));
    seq.terminal = true;
    seq.loopback = 0;
  } else {  // reach-stay
    SequenceItem reach = draw_pair(1);
    SequenceItem stay;
    stay.plus_set = reach.plus_set;
    stay.minus_set = complement_set(reach.plus_set, universe_);
    stay.beta_plus = cache_.lookup(stay.plus_set);
    stay.beta_minus = cache_.lookup(stay.minus_set);
    seq.items.push_back(reach);
    int unroll = stage == 2 ? 2 : 6;
    for (int i = 0; i < unroll; ++i) seq.items.push_back(stay);
    seq.loopback = 1;
    seq.terminal = false;
  }
  return seq;
}

const std::vector<double>* Learner::find_row(const Key& k) const {
  auto it = q_.find(k);
  return it == q_.end() ? nullptr : &it->second;
}

std::vector<double>& Learner::row(const Key& k) {
  auto it = q_.find(k);
  if (it == q_.end()) {
    it = q_.emplace(k, std::vector<double>(kNumExtActions, 0.0)).first;
  }
  return it->second;
}

void Learner::train(const std::vector<int>& stages, int episodes_per_stage,
                    std::mt19937_64& rng) {
  const int total = static_cast<int>(stages.size()) * episodes_per_stage;
  int episode = 0;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int stage : stages) {
    for (int e = 0; e < episodes_per_stage; ++e, ++episode) {
      double eps = params_.epsilon_start +
                   (params_.epsilon_end - params_.epsilon_start) *
                       (total <= 1 ? 1.0 : double(episode) / (total - 1));
      FormulaSequence seq = sample_curriculum(stage, rng);
      int id = intern(seq);
      const int n = static_cast<int>(seq.items.size());
      EnvState st = reset(board_, rng);
      int mdp_stage = 0;
      double ret = 0.0;
      int wraps = 0;
      bool success = false;
      int t = 0;
      for (; t < params_.horizon; ++t) {
        Key key{board_.index(st.pos), id, mdp_stage};
        std::vector<double>& qrow = row(key);
        int action;
        if (coin(rng) < eps) {
          do {
            action = std::uniform_int_distribution<int>(
                0, kNumExtActions - 1)(rng);
          } while (!action_valid(seq, mdp_stage, action));
        } else {
          action = -1;
          double best = -1e18;
          for (int a = 0; a < kNumExtActions; ++a) {
            if (!action_valid(seq, mdp_stage, a)) continue;
            if (qrow[a] > best) {
              best = qrow[a];
              action = a;
            }
          }
        }
        SeqTransition tr =
            advance_sequence(board_, seq, st.pos, mdp_stage, action);
        bool terminal_next = tr.stage >= n;
        double next_value = 0.0;
        if (!terminal_next) {
          Key nk{board_.index(tr.pos), id, tr.stage};
          if (const auto* nrow = find_row(nk)) {
            next_value = -1e18;
            for (int a = 0; a < kNumExtActions; ++a) {
              if (!action_valid(seq, tr.stage, a)) continue;
              next_value = std::max(next_value, (*nrow)[a]);
            }
          }
        }
        qrow[action] += params_.alpha * (tr.reward + params_.gamma * next_value -
                                         qrow[action]);
        ret += std::pow(params_.gamma, t) * tr.reward;
        if (tr.reward > 0 && tr.stage == seq.loopback && !seq.terminal) {
          ++wraps;
        }
        st.pos = tr.pos;
        mdp_stage = tr.stage;
        if (terminal_next) {
          success = mdp_stage == success_stage(seq);
          ++t;
          break;
        }
      }
      if (!seq.terminal) success = wraps >= 2;
      log_.push_back({episode, stage, id, ret, t, success});
    }
  }
}

int Learner::greedy_action(const FormulaSequence& seq, int sequence_id,
                           Square s, int stage, std::mt19937_64& rng) const {
  Key key{board_.index(s), sequence_id, stage};
  const auto* qrow = find_row(key);
  if (!qrow) {
    int action;
    do {
      action = std::uniform_int_distribution<int>(0, kNumExtActions - 1)(rng);
    } while (!action_valid(seq, stage, action));
    return action;
  }
  int best_action = -1;
  double best = -1e18;
  for (int a = 0; a < kNumExtActions; ++a) {
    if (!action_valid(seq, stage, a)) continue;
    if ((*qrow)[a] > best) {
      best = (*qrow)[a];
      best_action = a;
    }
  }
  return best_action;
}

EpisodeResult Learner::run_greedy(const FormulaSequence& seq, EnvState start,
                                  std::mt19937_64& rng) {
  int id = intern(seq);
  const int n = static_cast<int>(seq.items.size());
  EpisodeResult res;
  res.squares.push_back(start.pos);
  Square s = start.pos;
  int stage = 0;
  int wraps = 0;
  for (int t = 0; t < params_.horizon; ++t) {
    int action = greedy_action(seq, id, s, stage, rng);
    SeqTransition tr = advance_sequence(board_, seq, s, stage, action);
    res.discounted_return += std::pow(params_.gamma, t) * tr.reward;
    if (tr.reward > 0 && tr.stage == seq.loopback && !seq.terminal) ++wraps;
    s = tr.pos;
    stage = tr.stage;
    res.squares.push_back(s);
    res.steps = t + 1;
    if (stage >= n) {
      res.success = stage == success_stage(seq);
      break;
    }
  }
  if (!seq.terminal) res.success = wraps >= 2;
  return res;
}

double Learner::evaluate(int stage, int num_tasks, int episodes_per_task,
                         std::mt19937_64& rng) {
  int successes = 0;
  int total = 0;
  for (int i = 0; i < num_tasks; ++i) {
    FormulaSequence seq = sample_curriculum(stage, rng);
    for (int e = 0; e < episodes_per_task; ++e) {
      EnvState st = reset(board_, rng);
      EpisodeResult res = run_greedy(seq, st, rng);
      successes += res.success ? 1 : 0;
      ++total;
    }
  }
  return total == 0 ? 0.0 : double(successes) / total;
}

std::string Learner::log_csv() const {
  std::ostringstream os;
  os << "episode,stage,sequence,return,steps,success\n";
  char buf[32];
  for (const auto& e : log_) {
    std::snprintf(buf, sizeof(buf), "%.6f", e.discounted_return);
    os << e.episode << ',' << e.stage << ',' << e.sequence_id << ',' << buf
       << ',' << e.steps << ',' << (e.success ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string Learner::serialize() const {
  std::vector<std::pair<Key, const std::vector<double>*>> entries;
  entries.reserve(q_.size());
  for (const auto& [k, v] : q_) entries.emplace_back(k, &v);
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.sequence, a.first.stage, a.first.square) <
           std::tie(b.first.sequence, b.first.stage, b.first.square);
  });
  std::ostringstream os;
  os << "square,sequence,stage";
  for (int a = 0; a < kNumExtActions; ++a) os << ",q" << a;
  os << '\n';
  char buf[32];
  for (const auto& [k, v] : entries) {
    os << k.square << ',' << k.sequence << ',' << k.stage;
    for (double x : *v) {
      std::snprintf(buf, sizeof(buf), "%.6f", x);
      os << ',' << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ltlplan
