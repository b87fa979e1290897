#include "ltlplan/planner.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ltlplan/errors.hpp"
#include "ltlplan/ltl.hpp"
#include "nlohmann/json.hpp"

namespace ltlplan {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int success_stage(const FormulaSequence& seq) {
  return static_cast<int>(seq.items.size());
}

int failure_stage(const FormulaSequence& seq) {
  return static_cast<int>(seq.items.size()) + 1;
}

SeqTransition advance_sequence(const Board& b, const FormulaSequence& seq,
                               Square pos, int stage, int action) {
  const int n = static_cast<int>(seq.items.size());
  SeqTransition tr{pos, stage, 0.0, true};
  if (stage >= n) return tr;  // absorbing

  const SequenceItem& item = seq.items[stage];
  auto completed = [&](SeqTransition& t) {
    if (stage + 1 < n) {
      t.stage = stage + 1;
    } else if (seq.terminal) {
      t.stage = success_stage(seq);
      t.reward = 1.0;
    } else {
      t.stage = seq.loopback;  // accepting loop completed
      t.reward = 1.0;
    }
  };

  if (action == kEpsilonAction) {
    if (!item.is_eps) {
      tr.valid = false;
      return tr;
    }
    completed(tr);
    return tr;
  }

  EnvState moved = step_env(b, EnvState{pos, 0}, static_cast<Action>(action));
  tr.pos = moved.pos;
  if (item.is_eps) return tr;  // moving never advances an epsilon stage

  Assignment a = b.label(tr.pos);
  if (set_contains(item.minus_set, a)) {
    tr.stage = failure_stage(seq);
    tr.reward = -1.0;
  } else if (set_contains(item.plus_set, a)) {
    completed(tr);
  }
  return tr;
}

ValueTable value_iteration(const Board& b, const FormulaSequence& seq,
                           double gamma, double tol) {
  const int n = static_cast<int>(seq.items.size());
  const int squares = b.num_squares();
  ValueTable table;
  table.num_items = n;
  table.board_squares = squares;
  table.v.assign((n + 2) * squares, 0.0);

  // Gauss-Seidel sweeps; success/failure rows stay 0.
  for (int iter = 0; iter < 200000; ++iter) {
    double residual = 0.0;
    for (int stage = n - 1; stage >= 0; --stage) {
      for (int si = 0; si < squares; ++si) {
        Square s = b.square(si);
        double best = -1e18;
        for (int action = 0; action < kNumExtActions; ++action) {
          SeqTransition tr = advance_sequence(b, seq, s, stage, action);
          if (!tr.valid) continue;
          double v = tr.reward + gamma * table.at(tr.stage, b.index(tr.pos));
          best = std::max(best, v);
        }
        double& cell = table.v[stage * squares + si];
        residual = std::max(residual, std::abs(best - cell));
        cell = best;
      }
    }
    if (residual < tol) break;
  }
  return table;
}

Planner::Planner(const Board& board, const Ldba& ldba,
                 const FormulaCache& cache, PlannerParams params)
    : board_(board), ldba_(ldba), cache_(cache), params_(params) {
  universe_ = board_.possible_assignments();

  // Greatest set of accepting states closed under delta restricted to the
  // labels that actually occur on this board.
  universal_.assign(ldba_.num_states(), 0);
  for (int q = 0; q < ldba_.num_states(); ++q) {
    universal_[q] = ldba_.states[q].accepting;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int q = 0; q < ldba_.num_states(); ++q) {
      if (!universal_[q]) continue;
      for (Assignment a : universe_) {
        if (!universal_[ldba_.delta[q][a.bits]]) {
          universal_[q] = 0;
          changed = true;
          break;
        }
      }
    }
  }
}

std::shared_ptr<const ValueTable> Planner::table_for(
    const FormulaSequence& seq) {
  std::string key = seq.canonical_key();
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;
  auto table = std::make_shared<ValueTable>(
      value_iteration(board_, seq, params_.gamma, params_.tol));
  tables_.emplace(std::move(key), table);
  return table;
}

Planner::Selection Planner::select_run(Square s, int q) {
  std::vector<RunPrefix> runs = accepting_runs(ldba_, q);
  Selection best;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    FormulaSequence seq;
    try {
      seq = run_to_sequence(ldba_, runs[i], universe_, cache_,
                            default_truncation(runs[i]));
    } catch (const InfeasibleRunError&) {
      continue;
    }
    auto table = table_for(seq);
    double value = seq.items.empty() ? 0.0 : table->at(0, board_.index(s));
    if (best.run_index < 0 || value > best.value) {
      best.run_index = static_cast<int>(i);
      best.seq = std::move(seq);
      best.table = table;
      best.value = value;
    }
  }
  if (best.run_index < 0) {
    throw UnsatisfiableTaskError("no feasible accepting run from state " +
                                 std::to_string(q));
  }
  return best;
}

namespace {

std::string monitor_family(const MonitorInfo& m) {
  std::ostringstream os;
  for (const auto& g : m.maintain) os << to_string(g) << ';';
  os << '|';
  for (const auto& g : m.recur) os << to_string(g) << ';';
  return os.str();
}

}  // namespace

EpisodeResult Planner::execute(EnvState start) {
  EpisodeResult res;
  Square s = start.pos;
  int q = ldba_.initial;
  res.squares.push_back(s);

  if (universal_[q]) {  // e.g. the one-state automaton for "true"
    res.success = true;
    res.discounted_return = 1.0;
    return res;
  }

  Selection sel = select_run(s, q);  // unsatisfiable propagates from here
  res.recomputations.emplace_back(0, sel.run_index);
  int stage = 0;

  // Persistence / recurrence telemetry for horizon adjudication.
  std::string mon_family;
  int mon_entry = -1;
  std::vector<std::vector<int>> sat_times;  // per recurrence obligation

  const int horizon = params_.horizon;
  for (int t = 0; t < horizon; ++t) {
    // Greedy action, fixed tie order (N..NW, stay, epsilon).
    int best_action = -1;
    double best_value = -1e18;
    for (int action = 0; action < kNumExtActions; ++action) {
      SeqTransition tr = advance_sequence(board_, sel.seq, s, stage, action);
      if (!tr.valid) continue;
      double v =
          tr.reward + params_.gamma * sel.table->at(tr.stage, board_.index(tr.pos));
      if (v > best_value + 1e-12) {
        best_value = v;
        best_action = action;
      }
    }

    SeqTransition tr = advance_sequence(board_, sel.seq, s, stage, best_action);
    int q_next;
    if (best_action == kEpsilonAction) {
      q_next = sel.seq.items[stage].to;
    } else {
      s = tr.pos;
      q_next = ldba_.delta[q][board_.label(s).bits];
    }
    res.squares.push_back(s);
    res.ldba_states.push_back(q_next);
    res.steps = t + 1;

    double reward = 0.0;
    bool done = false;
    if (q_next == ldba_.sink) {
      reward = -1.0;
      done = true;
    } else if (universal_[q_next]) {
      reward = 1.0;
      res.success = true;
      done = true;
    } else if (tr.stage != failure_stage(sel.seq)) {
      reward = tr.reward;  // on-run progress; +1 on loop completion
    }
    res.discounted_return += std::pow(params_.gamma, t) * reward;

    // Monitor telemetry keyed by (maintain, recur) family.
    const auto& mon_prev = ldba_.monitor[q];
    const auto& mon_now = ldba_.monitor[q_next];
    if (mon_now) {
      std::string fam = monitor_family(*mon_now);
      if (fam != mon_family) {
        mon_family = fam;
        mon_entry = t;
        sat_times.assign(mon_now->recur.size(), {});
      } else if (mon_prev && !mon_now->recur.empty()) {
        bool advanced =
            mon_now->wrapped || mon_now->index != mon_prev->index;
        if (advanced) sat_times[mon_prev->index].push_back(t);
      }
    } else {
      mon_family.clear();
      mon_entry = -1;
    }

    if (done) {
      q = q_next;
      break;
    }

    if (q_next != q) {
      q = q_next;
      try {
        sel = select_run(s, q);
      } catch (const UnsatisfiableTaskError&) {
        break;  // no accepting continuation: failed episode
      }
      stage = 0;
      res.recomputations.emplace_back(t + 1, sel.run_index);
    } else {
      stage = tr.stage == failure_stage(sel.seq) ? stage : tr.stage;
    }
  }

  // Horizon adjudication for persistence / recurrence tasks.
  if (!res.success && q != ldba_.sink && res.steps == horizon &&
      mon_entry >= 0) {
    const auto& mon = ldba_.monitor[q];
    if (mon && mon->recur.empty()) {
      res.success = horizon - mon_entry >= params_.min_persist_steps;
    } else if (mon) {
      bool ok = true;
      for (std::size_t j = 0; j < sat_times.size() && ok; ++j) {
        const auto& times = sat_times[j];
        if (times.size() < 2) {
          ok = false;
          break;
        }
        int prev = mon_entry;
        for (int tt : times) {
          if (tt - prev > horizon / 2) ok = false;
          prev = tt;
        }
      }
      res.success = ok;
    }
  }
  return res;
}

TaskSuite TaskSuite::parse(const std::string& text) {
  TaskSuite suite;
  std::istringstream in(text);
  std::string line;
  std::string current = "default";
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string body = line.substr(first, last - first + 1);
    if (body[0] == '#') continue;
    if (body.front() == '[' && body.back() == ']') {
      current = body.substr(1, body.size() - 2);
      continue;
    }
    suite.tasks.push_back({current, body});
  }
  return suite;
}

TaskSuite TaskSuite::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open task file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string SuiteMetrics::to_csv() const {
  std::ostringstream os;
  os << "suite,task,seed,sr,mean_return,episodes\n";
  char buf[64];
  for (const auto& r : rows) {
    os << r.suite << ',' << r.task << ',' << r.seed << ',';
    std::snprintf(buf, sizeof(buf), "%.6f,%.6f", r.sr, r.mean_return);
    os << buf << ',' << r.episodes << '\n';
  }
  return os.str();
}

std::string SuiteMetrics::to_json() const {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"suite", r.suite},
                         {"task", r.task},
                         {"seed", r.seed},
                         {"sr", r.sr},
                         {"mean_return", r.mean_return},
                         {"episodes", r.episodes}});
  }
  j["unsatisfiable"] = unsatisfiable;
  j["unsupported"] = unsupported;
  return j.dump(2);
}

SuiteMetrics evaluate_suite(const TaskSuite& suite, const Board& b,
                            int episodes, int num_seeds, std::uint64_t seed,
                            PlannerParams params) {
  SuiteMetrics metrics;
  FormulaCache cache(b.alphabet(), b.possible_assignments());
  for (std::size_t ti = 0; ti < suite.tasks.size(); ++ti) {
    const auto& task = suite.tasks[ti];
    std::string label = task.suite + "/" + task.text;
    LtlPtr f = parse_ltl(task.text, b.alphabet());
    Ldba ldba;
    try {
      ldba = build_ldba(f, b.alphabet());
    } catch (const UnsupportedFragmentError&) {
      metrics.unsupported.push_back(label);
      continue;
    }
    Planner planner(b, ldba, cache, params);
    try {
      planner.select_run(b.square(0), ldba.initial);
    } catch (const UnsatisfiableTaskError&) {
      if (!planner.env_universally_accepting()[ldba.initial]) {
        metrics.unsatisfiable.push_back(label);
        continue;
      }
    }
    for (int si = 0; si < num_seeds; ++si) {
      std::mt19937_64 rng(derive_seed(seed, ti * 1000 + si));
      int successes = 0;
      double total_return = 0.0;
      for (int e = 0; e < episodes; ++e) {
        EnvState st = reset(b, rng);
        EpisodeResult res = planner.execute(st);
        successes += res.success ? 1 : 0;
        total_return += res.discounted_return;
      }
      metrics.rows.push_back({task.suite, task.text,
                              static_cast<std::uint64_t>(si),
                              double(successes) / episodes,
                              total_return / episodes, episodes});
    }
  }
  return metrics;
}

}  // namespace ltlplan
