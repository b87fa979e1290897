// ltlplan: temporal-logic task compiler and exact-evaluation toolkit.
//
// Subcommands: compile, runs, formulas, eval, train, pipeline.
// Exit codes: 0 success, 1 evaluation-level failure, 2 input error.

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ltlplan/errors.hpp"
#include "ltlplan/learner.hpp"
#include "ltlplan/planner.hpp"
#include "nlohmann/json.hpp"

using namespace ltlplan;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
}

// Sorted identifiers appearing in the formula text; used when no explicit
// proposition list is given.
std::vector<std::string> infer_props(const std::string& text) {
  std::set<std::string> names;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if ((c >= 'a' && c <= 'z') || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             ((text[j] >= 'a' && text[j] <= 'z') ||
              (text[j] >= '0' && text[j] <= '9') || text[j] == '_')) {
        ++j;
      }
      std::string tok = text.substr(i, j - i);
      if (tok != "true") names.insert(tok);
      i = j;
    } else {
      ++i;
    }
  }
  return {names.begin(), names.end()};
}

Alphabet alphabet_from(const std::string& formula_text,
                       const std::string& props_csv) {
  if (props_csv.empty()) return Alphabet(infer_props(formula_text));
  std::vector<std::string> props;
  std::stringstream ss(props_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) props.push_back(item);
  }
  return Alphabet(std::move(props));
}

Board board_from(const std::string& path) {
  return path.empty() ? Board::default_board() : Board::load_file(path);
}

AssignmentSet parse_set(const nlohmann::json& j, const Alphabet& ab) {
  AssignmentSet out;
  for (const auto& entry : j) {
    Assignment a{};
    for (const auto& name : entry) {
      int idx = ab.index_of(name.get<std::string>());
      if (idx < 0) {
        throw ConfigError("unknown proposition in set: " +
                          name.get<std::string>());
      }
      a.bits |= 1u << idx;
    }
    out.push_back(a);
  }
  normalize_set(out);
  return out;
}

std::string describe_run(const Ldba& m, const RunPrefix& r,
                         const FormulaCache& cache,
                         const AssignmentSet& universe) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.path.size(); ++i) {
    os << 'q' << r.path[i];
    if (i + 1 < r.path.size()) {
      if (r.eps_edge[i]) {
        os << " -[eps]-> ";
      } else {
        AssignmentSet guard =
            transition_assignments(m, r.path[i], r.path[i + 1], universe);
        os << " -[" << to_string(cache.lookup(guard)) << "]-> ";
      }
    }
  }
  os << " (loop to #" << r.loopback
     << (r.eps_edge.back() ? " via eps" : "") << ")";
  return os.str();
}

std::string describe_sequence(const FormulaSequence& seq) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.items.size(); ++i) {
    const auto& item = seq.items[i];
    os << "  [" << i << "] ";
    if (item.is_eps) {
      os << "eps -> q" << item.to;
    } else {
      os << "B+: " << to_string(item.beta_plus)
         << "   B-: " << to_string(item.beta_minus);
    }
    os << '\n';
  }
  os << (seq.terminal ? "  terminal\n"
                      : "  loops to item " + std::to_string(seq.loopback) +
                            "\n");
  return os.str();
}

int cmd_compile(const std::string& text, const std::string& props_csv,
                const std::string& out_dot, const std::string& out_json) {
  Alphabet ab = alphabet_from(text, props_csv);
  LtlPtr f = parse_ltl(text, ab);
  Ldba m = build_ldba(f, ab);
  write_file(out_dot, to_dot(m));
  write_file(out_json, to_json(m));
  std::cout << "automaton: " << m.num_states() << " states, initial q"
            << m.initial << ", written to " << out_dot << " and " << out_json
            << "\n";
  return 0;
}

int cmd_runs(const std::string& text, const std::string& props_csv,
             bool as_json) {
  Alphabet ab = alphabet_from(text, props_csv);
  LtlPtr f = parse_ltl(text, ab);
  Ldba m = build_ldba(f, ab);
  AssignmentSet universe = ab.all_assignments();
  FormulaCache cache(ab, universe);
  auto runs = accepting_runs(m, m.initial);
  if (as_json) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : runs) {
      nlohmann::ordered_json jr;
      jr["path"] = r.path;
      jr["eps_edge"] = std::vector<int>(r.eps_edge.begin(), r.eps_edge.end());
      jr["loopback"] = r.loopback;
      j.push_back(jr);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : runs) {
      std::cout << describe_run(m, r, cache, universe) << "\n";
    }
    std::cout << runs.size() << " accepting run(s)\n";
  }
  return 0;
}

int cmd_formulas(const std::string& board_path,
                 const std::string& universe_path, const std::string& query,
                 bool dump) {
  Alphabet ab;
  AssignmentSet universe;
  if (!universe_path.empty()) {
    std::ifstream in(universe_path);
    if (!in) throw ConfigError("cannot open universe file: " + universe_path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, true, true);
    std::vector<std::string> props;
    for (const auto& p : j.at("props")) props.push_back(p.get<std::string>());
    ab = Alphabet(std::move(props));
    universe = parse_set(j.at("universe"), ab);
  } else {
    Board b = board_from(board_path);
    ab = b.alphabet();
    universe = b.possible_assignments();
  }
  FormulaCache cache(ab, universe);
  if (dump) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [set, formula] : cache.entries()) {
      nlohmann::ordered_json entry;
      entry["formula"] = to_string(formula);
      entry["complexity"] = complexity(formula);
      nlohmann::ordered_json sets = nlohmann::ordered_json::array();
      for (Assignment a : set) {
        nlohmann::ordered_json one = nlohmann::ordered_json::array();
        for (int i = 0; i < ab.size(); ++i) {
          if (a.contains(i)) one.push_back(ab.prop(i));
        }
        sets.push_back(one);
      }
      entry["set"] = sets;
      j.push_back(entry);
    }
    std::cout << j.dump(2) << "\n";
  }
  if (!query.empty()) {
    AssignmentSet set = parse_set(nlohmann::json::parse(query), ab);
    BoolPtr f = cache.lookup(set);
    std::cout << to_string(f) << "\n" << "complexity: " << complexity(f)
              << "\n";
  }
  return 0;
}

int cmd_eval(const std::string& board_path, const std::string& tasks_path,
             int episodes, int seeds, std::uint64_t seed, PlannerParams params,
             const std::string& out_csv, const std::string& out_json) {
  Board b = board_from(board_path);
  TaskSuite suite = TaskSuite::load_file(tasks_path);
  SuiteMetrics m = evaluate_suite(suite, b, episodes, seeds, seed, params);
  if (!out_csv.empty()) write_file(out_csv, m.to_csv());
  if (!out_json.empty()) write_file(out_json, m.to_json());
  std::map<std::string, std::pair<double, int>> agg;
  for (const auto& r : m.rows) {
    agg[r.suite].first += r.sr;
    agg[r.suite].second += 1;
  }
  for (const auto& [suite_name, acc] : agg) {
    std::cout << suite_name << ": mean SR "
              << (acc.second ? acc.first / acc.second : 0.0) << " over "
              << acc.second << " rows\n";
  }
  for (const auto& u : m.unsatisfiable) {
    std::cerr << "unsatisfiable task (not scored): " << u << "\n";
  }
  for (const auto& u : m.unsupported) {
    std::cerr << "unsupported task (not scored): " << u << "\n";
  }
  return 0;
}

int cmd_train(const std::string& board_path, const std::string& stages_csv,
              int episodes_per_stage, std::uint64_t seed,
              const std::string& out_qtable, const std::string& out_log) {
  Board b = board_from(board_path);
  FormulaCache cache(b.alphabet(), b.possible_assignments());
  Learner learner(b, cache);
  std::vector<int> stages;
  std::stringstream ss(stages_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) stages.push_back(std::stoi(item));
  }
  std::mt19937_64 rng(derive_seed(seed, 0));
  learner.train(stages, episodes_per_stage, rng);
  if (!out_qtable.empty()) write_file(out_qtable, learner.serialize());
  if (!out_log.empty()) write_file(out_log, learner.log_csv());
  std::mt19937_64 eval_rng(derive_seed(seed, 1));
  double sr = learner.evaluate(stages.front(), 20, 5, eval_rng);
  std::cout << "trained on " << stages.size() << " stage(s), "
            << episodes_per_stage << " episodes each; stage-"
            << stages.front() << " greedy SR " << sr << "\n";
  return 0;
}

int cmd_pipeline(const std::string& text, const std::string& board_path,
                 bool do_execute, std::uint64_t seed, PlannerParams params) {
  Board b = board_from(board_path);
  LtlPtr f = parse_ltl(text, b.alphabet());
  Ldba m = build_ldba(f, b.alphabet());
  std::cout << "formula: " << to_string(f) << "\n";
  std::cout << "automaton: " << m.num_states() << " states, initial q"
            << m.initial << "\n";
  for (int q = 0; q < m.num_states(); ++q) {
    std::cout << "  q" << q << (m.states[q].accepting ? " [acc]" : "")
              << (m.states[q].deterministic ? " [det]" : "") << ": "
              << m.states[q].name << "\n";
  }
  AssignmentSet universe = b.possible_assignments();
  FormulaCache cache(b.alphabet(), universe);
  auto runs = accepting_runs(m, m.initial);
  std::cout << runs.size() << " accepting run(s):\n";
  for (const auto& r : runs) {
    std::cout << describe_run(m, r, cache, universe) << "\n";
    try {
      FormulaSequence seq =
          run_to_sequence(m, r, universe, cache, default_truncation(r));
      std::cout << describe_sequence(seq);
    } catch (const InfeasibleRunError& e) {
      std::cout << "  infeasible: " << e.what() << "\n";
    }
  }
  Planner planner(b, m, cache, params);
  std::mt19937_64 rng(derive_seed(seed, 0));
  EnvState start = reset(b, rng);
  Planner::Selection sel = planner.select_run(start.pos, m.initial);
  std::cout << "selected run #" << sel.run_index << " from ("
            << start.pos.x << "," << start.pos.y << ") with value "
            << sel.value << "\n";
  if (do_execute) {
    EpisodeResult res = planner.execute(start);
    std::cout << "episode: " << (res.success ? "success" : "failure")
              << ", return " << res.discounted_return << ", " << res.steps
              << " steps\n  trace:";
    for (const auto& sq : res.squares) {
      std::cout << " (" << sq.x << "," << sq.y << ")";
    }
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal-logic task compiler and exact-evaluation toolkit"};
  app.require_subcommand(1);

  std::string formula, props, board_path, tasks_path, universe_path, query;
  std::string out_dot = "automaton.dot", out_json = "automaton.json";
  std::string out_csv = "metrics.csv", out_metrics_json;
  std::string out_qtable = "qtable.csv", out_log = "train_log.csv";
  std::string stages = "1";
  bool as_json = false, dump = false, do_execute = false;
  int episodes = 100, seeds = 5, episodes_per_stage = 5000;
  std::uint64_t seed = 0;
  PlannerParams params;

  auto* compile = app.add_subcommand("compile", "build an automaton and export DOT/JSON");
  compile->add_option("formula", formula, "LTL formula")->required();
  compile->add_option("--props", props, "comma-separated proposition order");
  compile->add_option("--out-dot", out_dot);
  compile->add_option("--out-json", out_json);

  auto* runs = app.add_subcommand("runs", "enumerate accepting runs");
  runs->add_option("formula", formula, "LTL formula")->required();
  runs->add_option("--props", props, "comma-separated proposition order");
  runs->add_flag("--json", as_json, "emit JSON");

  auto* formulas = app.add_subcommand("formulas", "query the Boolean formula cache");
  formulas->add_option("--board", board_path, "board JSON (default: shipped board)");
  formulas->add_option("--universe", universe_path, "universe JSON file");
  formulas->add_option("--set", query, "assignment-set query, e.g. [[\"queen\"],[\"queen\",\"rook\"]]");
  formulas->add_flag("--dump", dump, "serialize the full cache as JSON");

  auto* eval = app.add_subcommand("eval", "evaluate task suites with the exact planner");
  eval->add_option("--board", board_path);
  eval->add_option("--tasks", tasks_path)->required();
  eval->add_option("--episodes", episodes);
  eval->add_option("--seeds", seeds);
  eval->add_option("--seed", seed);
  eval->add_option("--gamma", params.gamma);
  eval->add_option("--horizon", params.horizon);
  eval->add_option("--tol", params.tol);
  eval->add_option("--out", out_csv);
  eval->add_option("--out-json", out_metrics_json);

  auto* train = app.add_subcommand("train", "tabular Q-learning on curriculum tasks");
  train->add_option("--board", board_path);
  train->add_option("--stages", stages, "e.g. 1,2,3");
  train->add_option("--episodes-per-stage", episodes_per_stage);
  train->add_option("--seed", seed);
  train->add_option("--out", out_qtable);
  train->add_option("--log", out_log);

  auto* pipeline = app.add_subcommand("pipeline", "compile, extract runs, select, execute");
  pipeline->add_option("formula", formula, "LTL formula")->required();
  pipeline->add_option("--board", board_path);
  pipeline->add_flag("--execute", do_execute, "run one greedy episode");
  pipeline->add_option("--seed", seed);
  pipeline->add_option("--gamma", params.gamma);
  pipeline->add_option("--horizon", params.horizon);
  pipeline->add_option("--tol", params.tol);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) return cmd_compile(formula, props, out_dot, out_json);
    if (runs->parsed()) return cmd_runs(formula, props, as_json);
    if (formulas->parsed())
      return cmd_formulas(board_path, universe_path, query, dump);
    if (eval->parsed())
      return cmd_eval(board_path, tasks_path, episodes, seeds, seed, params,
                      out_csv, out_metrics_json);
    if (train->parsed())
      return cmd_train(board_path, stages, episodes_per_stage, seed,
                       out_qtable, out_log);
    if (pipeline->parsed())
      return cmd_pipeline(formula, board_path, do_execute, seed, params);
  } catch (const UnsatisfiableTaskError& e) {
    std::cerr << "unsatisfiable task: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error at offset " << e.offset() << ": " << e.what()
              << "\n";
    return 2;
  } catch (const UnknownPropositionError& e) {
    std::cerr << "parse error at offset " << e.offset() << ": " << e.what()
              << "\n";
    return 2;
  } catch (const UnsupportedFragmentError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
