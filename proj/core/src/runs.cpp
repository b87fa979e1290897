#include "ltlplan/runs.hpp"

#include <algorithm>
#include <sstream>

#include "ltlplan/errors.hpp"

namespace ltlplan {

namespace {

// Successors of q in visit order: letter targets ascending, then eps.
std::vector<std::pair<int, bool>> ordered_successors(const Ldba& b, int q) {
  std::vector<int> letter = b.delta[q];
  std::sort(letter.begin(), letter.end());
  letter.erase(std::unique(letter.begin(), letter.end()), letter.end());
  std::vector<std::pair<int, bool>> out;
  for (int t : letter) out.emplace_back(t, false);
  for (int t : b.eps[q]) out.emplace_back(t, true);
  return out;
}

struct RunSearch {
  const Ldba& b;
  std::vector<RunPrefix> out;
  std::vector<int> path;
  std::vector<char> eps_edge;
  std::vector<int> pos_in_path;  // -1 when absent

  explicit RunSearch(const Ldba& b_) : b(b_) {
    pos_in_path.assign(b.num_states(), -1);
  }

  // last_acc: index in path of the most recent accepting state, -1 if none.
  void dfs(int last_acc) {
    int q = path.back();
    for (auto [t, is_eps] : ordered_successors(b, q)) {
      int at = pos_in_path[t];
      if (at >= 0) {
        // Closing edge; the loop must contain an accepting state.
        if (at <= last_acc) {
          RunPrefix r;
          r.path = path;
          r.eps_edge = eps_edge;
          r.eps_edge.push_back(is_eps ? 1 : 0);
          r.loopback = at;
          out.push_back(std::move(r));
        }
        continue;
      }
      pos_in_path[t] = static_cast<int>(path.size());
      path.push_back(t);
      eps_edge.push_back(is_eps ? 1 : 0);
      dfs(b.states[t].accepting ? pos_in_path[t] : last_acc);
      eps_edge.pop_back();
      path.pop_back();
      pos_in_path[t] = -1;
    }
  }
};

}  // namespace

std::vector<RunPrefix> accepting_runs(const Ldba& b, int q) {
  RunSearch s(b);
  s.path.push_back(q);
  s.pos_in_path[q] = 0;
  s.dfs(b.states[q].accepting ? 0 : -1);
  return s.out;
}

AssignmentSet transition_assignments(const Ldba& b, int q, int q_next,
                                     const AssignmentSet& universe) {
  AssignmentSet out;
  for (Assignment a : universe) {
    if (b.delta[q][a.bits] == q_next) out.push_back(a);
  }
  return out;
}

int default_truncation(const RunPrefix& r) {
  return static_cast<int>(r.path.size()) + 2 * r.loop_length();
}

FormulaSequence run_to_sequence(const Ldba& b, const RunPrefix& r,
                                const AssignmentSet& universe,
                                const FormulaCache& cache, int H) {
  const int k = static_cast<int>(r.path.size()) - 1;

  auto make_item = [&](int from, int to, bool is_eps) {
    SequenceItem item;
    item.is_eps = is_eps;
    item.from = from;
    item.to = to;
    if (!is_eps) {
      item.plus_set = transition_assignments(b, from, to, universe);
      if (item.plus_set.empty()) {
        throw InfeasibleRunError("run edge " + std::to_string(from) + " -> " +
                                 std::to_string(to) +
                                 " has no satisfying assignment");
      }
      for (Assignment a : universe) {
        int t = b.delta[from][a.bits];
        if (t != from && t != to) item.minus_set.push_back(a);
      }
      item.beta_plus = cache.lookup(item.plus_set);
      item.beta_minus = cache.lookup(item.minus_set);
    }
    return item;
  };

  // One pass: the k path edges, then the closing edge.
  std::vector<SequenceItem> pass;
  for (int i = 0; i < k; ++i) {
    pass.push_back(make_item(r.path[i], r.path[i + 1], r.eps_edge[i]));
  }
  pass.push_back(make_item(r.path[k], r.path[r.loopback], r.eps_edge[k]));

  FormulaSequence seq;
  seq.loopback = r.loopback;

  // A universal accepting self-loop needs no unrolling: once entered, every
  // continuation stays accepting.
  bool pure_self_loop = r.loopback == k && !r.eps_edge[k];
  if (pure_self_loop && pass.back().plus_set == universe) {
    seq.terminal = true;
    seq.items.assign(pass.begin(), pass.end() - 1);
    return seq;
  }

  for (const auto& item : pass) seq.items.push_back(item);
  while (static_cast<int>(seq.items.size()) < H) {
    for (int i = r.loopback; i <= k; ++i) {
      if (static_cast<int>(seq.items.size()) >= H) break;
      seq.items.push_back(pass[i]);
    }
  }
  if (static_cast<int>(seq.items.size()) > H) seq.items.resize(H);
  return seq;
}

std::string FormulaSequence::canonical_key() const {
  std::ostringstream os;
  os << loopback << '|' << (terminal ? 1 : 0) << '|';
  for (const auto& item : items) {
    if (item.is_eps) {
      os << "e" << item.to << ';';
    } else {
      os << 'p';
      for (Assignment a : item.plus_set) os << a.bits << ',';
      os << ':';
      for (Assignment a : item.minus_set) os << a.bits << ',';
      os << ';';
    }
  }
  return os.str();
}

}  // namespace ltlplan
