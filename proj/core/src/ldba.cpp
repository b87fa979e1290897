#include "ltlplan/ldba.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "ltlplan/errors.hpp"
#include "nlohmann/json.hpp"

namespace ltlplan {

bool is_propositional(const LtlPtr& f) {
  switch (f->kind) {
    case LtlKind::True:
    case LtlKind::Prop:
      return true;
    case LtlKind::Not:
      return is_propositional(f->lhs);
    case LtlKind::And:
    case LtlKind::Or:
      return is_propositional(f->lhs) && is_propositional(f->rhs);
    default:
      return false;
  }
}

bool eval_prop(const LtlPtr& f, Assignment a) {
  switch (f->kind) {
    case LtlKind::True:
      return true;
    case LtlKind::Prop:
      return a.contains(f->prop);
    case LtlKind::Not:
      return !eval_prop(f->lhs, a);
    case LtlKind::And:
      return eval_prop(f->lhs, a) && eval_prop(f->rhs, a);
    case LtlKind::Or:
      return eval_prop(f->lhs, a) || eval_prop(f->rhs, a);
    default:
      assert(false && "eval_prop on temporal formula");
      return false;
  }
}

namespace {

// ---------------------------------------------------------------------------
// Residual simplification.
//
// Residuals are normalized formulas (literals, And, Or, Next, Until, Always).
// Simplification keeps the reachable state space small: units, duplicates,
// syntactic subsumption between siblings, and collapses like F F p == F p.
// All rewrites are sound implications; state identity additionally goes
// through a truth table over temporal atoms (below).
// ---------------------------------------------------------------------------

bool implies(const LtlPtr& f, const LtlPtr& g);

bool is_f_shape(const LtlPtr& f) {
  return f->kind == LtlKind::Until && is_true(f->lhs);
}

bool implies(const LtlPtr& f, const LtlPtr& g) {
  if (compare(f, g) == 0) return true;
  if (is_false(f) || is_true(g)) return true;
  if (f->kind == LtlKind::Or) {
    return implies(f->lhs, g) && implies(f->rhs, g);
  }
  if (g->kind == LtlKind::And) {
    return implies(f, g->lhs) && implies(f, g->rhs);
  }
  if (f->kind == LtlKind::And) {
    if (implies(f->lhs, g) || implies(f->rhs, g)) return true;
  }
  if (g->kind == LtlKind::Or) {
    if (implies(f, g->lhs) || implies(f, g->rhs)) return true;
  }
  if (g->kind == LtlKind::Until) {
    if (implies(f, g->rhs)) return true;  // witness at the first position
    if (f->kind == LtlKind::Until) {
      if (implies(f->lhs, g->lhs) && implies(f->rhs, g->rhs)) return true;
      if (is_f_shape(f) && is_f_shape(g) && implies(f->rhs, g)) return true;
    }
  }
  if (f->kind == LtlKind::Always) {
    if (implies(f->lhs, g)) return true;
    if (g->kind == LtlKind::Always && implies(f->lhs, g->lhs)) return true;
  }
  if (f->kind == LtlKind::Next && g->kind == LtlKind::Next) {
    return implies(f->lhs, g->lhs);
  }
  return false;
}

void flatten(LtlKind kind, const LtlPtr& f, std::vector<LtlPtr>& out) {
  if (f->kind == kind) {
    flatten(kind, f->lhs, out);
    flatten(kind, f->rhs, out);
  } else {
    out.push_back(f);
  }
}

LtlPtr fold(LtlKind kind, const std::vector<LtlPtr>& cs) {
  LtlPtr acc = cs.back();
  for (int i = static_cast<int>(cs.size()) - 2; i >= 0; --i) {
    acc = kind == LtlKind::And ? LtlFormula::make_and(cs[i], acc)
                               : LtlFormula::make_or(cs[i], acc);
  }
  return acc;
}

LtlPtr mk_and(std::vector<LtlPtr> parts);
LtlPtr mk_or(std::vector<LtlPtr> parts);

LtlPtr mk_and(std::vector<LtlPtr> parts) {
  std::vector<LtlPtr> cs;
  for (const auto& p : parts) flatten(LtlKind::And, p, cs);
  std::sort(cs.begin(), cs.end(),
            [](const LtlPtr& a, const LtlPtr& b) { return compare(a, b) < 0; });
  cs.erase(std::unique(cs.begin(), cs.end(),
                       [](const LtlPtr& a, const LtlPtr& b) {
                         return compare(a, b) == 0;
                       }),
           cs.end());
  for (const auto& c : cs) {
    if (is_false(c)) return ltl_false();
  }
  std::erase_if(cs, [](const LtlPtr& c) { return is_true(c); });
  // Drop conjuncts entailed by a stronger sibling.
  std::vector<LtlPtr> kept;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < cs.size() && !redundant; ++j) {
      if (i == j) continue;
      if (implies(cs[j], cs[i]) && !(implies(cs[i], cs[j]) && j > i)) {
        redundant = true;
      }
    }
    if (!redundant) kept.push_back(cs[i]);
  }
  if (kept.empty()) return LtlFormula::make_true();
  if (kept.size() == 1) return kept.front();
  return fold(LtlKind::And, kept);
}

LtlPtr mk_or(std::vector<LtlPtr> parts) {
  std::vector<LtlPtr> cs;
  for (const auto& p : parts) flatten(LtlKind::Or, p, cs);
  std::sort(cs.begin(), cs.end(),
            [](const LtlPtr& a, const LtlPtr& b) { return compare(a, b) < 0; });
  cs.erase(std::unique(cs.begin(), cs.end(),
                       [](const LtlPtr& a, const LtlPtr& b) {
                         return compare(a, b) == 0;
                       }),
           cs.end());
  for (const auto& c : cs) {
    if (is_true(c)) return LtlFormula::make_true();
  }
  std::erase_if(cs, [](const LtlPtr& c) { return is_false(c); });
  // Drop disjuncts subsumed by a weaker sibling.
  std::vector<LtlPtr> kept;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < cs.size() && !redundant; ++j) {
      if (i == j) continue;
      if (implies(cs[i], cs[j]) && !(implies(cs[j], cs[i]) && j > i)) {
        redundant = true;
      }
    }
    if (!redundant) kept.push_back(cs[i]);
  }
  if (kept.empty()) return ltl_false();
  if (kept.size() == 1) return kept.front();
  return fold(LtlKind::Or, kept);
}

LtlPtr mk_next(LtlPtr f) {
  if (is_true(f) || is_false(f)) return f;
  return LtlFormula::make_next(std::move(f));
}

LtlPtr mk_always(LtlPtr f) {
  if (is_true(f) || is_false(f)) return f;
  if (f->kind == LtlKind::Always) return f;
  // G F G p == F G p
  if (is_f_shape(f) && f->rhs->kind == LtlKind::Always) return f;
  return LtlFormula::make_always(std::move(f));
}

LtlPtr mk_until(LtlPtr lhs, LtlPtr rhs) {
  if (is_true(rhs) || is_false(rhs)) return rhs;
  if (is_false(lhs)) return rhs;
  if (is_true(lhs)) {
    if (is_f_shape(rhs)) return rhs;  // F F p == F p
    // F G F p == G F p
    if (rhs->kind == LtlKind::Always && is_f_shape(rhs->lhs)) return rhs;
  }
  return LtlFormula::make_until(std::move(lhs), std::move(rhs));
}

// Bottom-up rebuild of a normalized formula through the mk_* constructors.
LtlPtr resimplify(const LtlPtr& f) {
  switch (f->kind) {
    case LtlKind::And:
      return mk_and({resimplify(f->lhs), resimplify(f->rhs)});
    case LtlKind::Or:
      return mk_or({resimplify(f->lhs), resimplify(f->rhs)});
    case LtlKind::Next:
      return mk_next(resimplify(f->lhs));
    case LtlKind::Until:
      return mk_until(resimplify(f->lhs), resimplify(f->rhs));
    case LtlKind::Always:
      return mk_always(resimplify(f->lhs));
    default:
      return f;
  }
}

// One-step formula progression after consuming assignment `a`.
LtlPtr prog(const LtlPtr& f, Assignment a) {
  switch (f->kind) {
    case LtlKind::True:
      return f;
    case LtlKind::Prop:
      return a.contains(f->prop) ? LtlFormula::make_true() : ltl_false();
    case LtlKind::Not:
      if (f->lhs->kind == LtlKind::True) return f;  // canonical false
      return a.contains(f->lhs->prop) ? ltl_false() : LtlFormula::make_true();
    case LtlKind::And:
      return mk_and({prog(f->lhs, a), prog(f->rhs, a)});
    case LtlKind::Or:
      return mk_or({prog(f->lhs, a), prog(f->rhs, a)});
    case LtlKind::Next:
      return f->lhs;
    case LtlKind::Until:
      return mk_or({prog(f->rhs, a), mk_and({prog(f->lhs, a), f})});
    case LtlKind::Always:
      return mk_and({prog(f->lhs, a), f});
    default:
      return f;
  }
}

// ---------------------------------------------------------------------------
// Temporal atoms and propositional-equivalence state keys.
// ---------------------------------------------------------------------------

void collect_atoms(const LtlPtr& f, std::vector<LtlPtr>& out) {
  switch (f->kind) {
    case LtlKind::True:
      return;
    case LtlKind::Not:
      if (f->lhs->kind == LtlKind::True) return;
      out.push_back(f->lhs);  // literal: the proposition is the variable
      return;
    case LtlKind::Prop:
      out.push_back(f);
      return;
    case LtlKind::And:
    case LtlKind::Or:
      collect_atoms(f->lhs, out);
      collect_atoms(f->rhs, out);
      return;
    default:
      out.push_back(f);
      return;
  }
}

std::vector<LtlPtr> sorted_atoms(const LtlPtr& f) {
  std::vector<LtlPtr> atoms;
  collect_atoms(f, atoms);
  std::sort(atoms.begin(), atoms.end(),
            [](const LtlPtr& a, const LtlPtr& b) { return compare(a, b) < 0; });
  atoms.erase(std::unique(atoms.begin(), atoms.end(),
                          [](const LtlPtr& a, const LtlPtr& b) {
                            return compare(a, b) == 0;
                          }),
              atoms.end());
  return atoms;
}

int atom_index(const std::vector<LtlPtr>& atoms, const LtlPtr& f) {
  auto it = std::lower_bound(
      atoms.begin(), atoms.end(), f,
      [](const LtlPtr& a, const LtlPtr& b) { return compare(a, b) < 0; });
  assert(it != atoms.end() && compare(*it, f) == 0);
  return static_cast<int>(it - atoms.begin());
}

bool eval_over_atoms(const LtlPtr& f, const std::vector<LtlPtr>& atoms,
                     std::uint32_t mask) {
  switch (f->kind) {
    case LtlKind::True:
      return true;
    case LtlKind::Not:
      if (f->lhs->kind == LtlKind::True) return false;
      return !((mask >> atom_index(atoms, f->lhs)) & 1u);
    case LtlKind::And:
      return eval_over_atoms(f->lhs, atoms, mask) &&
             eval_over_atoms(f->rhs, atoms, mask);
    case LtlKind::Or:
      return eval_over_atoms(f->lhs, atoms, mask) ||
             eval_over_atoms(f->rhs, atoms, mask);
    default:
      return (mask >> atom_index(atoms, f)) & 1u;
  }
}

// ---------------------------------------------------------------------------
// Construction.
// ---------------------------------------------------------------------------

constexpr int kMaxTableAtoms = 16;
constexpr int kMaxStates = 20000;

// Liveness atom shapes that can be delegated to a deterministic monitor.
struct Monitorable {
  bool recurrence = false;  // false: maintain forever; true: visit infinitely often
  LtlPtr formula;           // propositional payload
};

std::optional<Monitorable> classify_liveness(const LtlPtr& atom) {
  if (atom->kind == LtlKind::Always) {
    if (is_propositional(atom->lhs)) return Monitorable{false, atom->lhs};
    if (is_f_shape(atom->lhs) && is_propositional(atom->lhs->rhs)) {
      return Monitorable{true, atom->lhs->rhs};  // G F p
    }
    return std::nullopt;
  }
  if (is_f_shape(atom) && atom->rhs->kind == LtlKind::Always &&
      is_propositional(atom->rhs->lhs)) {
    return Monitorable{false, atom->rhs->lhs};  // F G p
  }
  return std::nullopt;
}

void check_supported(const LtlPtr& f) {
  if (f->kind == LtlKind::Always) {
    bool ok = is_propositional(f->lhs) ||
              (is_f_shape(f->lhs) && is_propositional(f->lhs->rhs));
    if (!ok) throw UnsupportedFragmentError(to_string(f));
  }
  if (f->lhs) check_supported(f->lhs);
  if (f->rhs) check_supported(f->rhs);
}

struct Builder {
  const Alphabet& alphabet;

  enum class NodeType { Residual, Monitor, Top, Sink };
  struct Node {
    NodeType type;
    LtlPtr residual;         // Residual only
    MonitorInfo mon;         // Monitor only
  };

  std::vector<Node> nodes;
  std::map<std::string, int> by_key;
  std::deque<int> queue;

  int intern(NodeType type, std::string key, Node node) {
    auto it = by_key.find(key);
    if (it != by_key.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    if (id >= kMaxStates) {
      throw UnsupportedFragmentError("state budget exceeded during construction");
    }
    by_key.emplace(std::move(key), id);
    nodes.push_back(std::move(node));
    queue.push_back(id);
    return id;
  }

  int intern_top() { return intern(NodeType::Top, "#top", {NodeType::Top}); }
  int intern_sink() { return intern(NodeType::Sink, "#sink", {NodeType::Sink}); }

  int intern_residual(const LtlPtr& f) {
    if (is_true(f)) return intern_top();
    if (is_false(f)) return intern_sink();
    auto atoms = sorted_atoms(f);
    std::string key;
    if (static_cast<int>(atoms.size()) <= kMaxTableAtoms) {
      std::uint32_t rows = 1u << atoms.size();
      std::vector<char> table(rows);
      bool any_true = false, any_false = false;
      for (std::uint32_t mask = 0; mask < rows; ++mask) {
        table[mask] = eval_over_atoms(f, atoms, mask);
        (table[mask] ? any_true : any_false) = true;
      }
      if (!any_true) return intern_sink();
      if (!any_false) return intern_top();
      std::ostringstream os;
      os << "R|";
      for (const auto& a : atoms) os << to_string(a) << ';';
      os << '|';
      for (std::uint32_t mask = 0; mask < rows; ++mask) os << (table[mask] ? '1' : '0');
      key = os.str();
    } else {
      key = "Rbig|" + to_string(f);
    }
    return intern(NodeType::Residual, std::move(key),
                  {NodeType::Residual, f});
  }

  std::string monitor_key(const MonitorInfo& m) {
    std::ostringstream os;
    os << "M|";
    for (const auto& g : m.maintain) os << to_string(g) << ';';
    os << '|';
    for (const auto& g : m.recur) os << to_string(g) << ';';
    os << '|' << m.index << '|' << (m.wrapped ? 1 : 0);
    return os.str();
  }

  int intern_monitor(MonitorInfo m) {
    std::string key = monitor_key(m);
    Node node{NodeType::Monitor};
    node.mon = std::move(m);
    return intern(NodeType::Monitor, std::move(key), std::move(node));
  }

  // Every monitorable subformula anywhere in the residual, including those
  // nested inside Until/Next scopes (a commitment to one of them may
  // discharge the enclosing obligation).
  static void collect_monitorable(const LtlPtr& f, std::vector<LtlPtr>& out) {
    if (classify_liveness(f)) out.push_back(f);
    switch (f->kind) {
      case LtlKind::And:
      case LtlKind::Or:
      case LtlKind::Until:
        collect_monitorable(f->lhs, out);
        collect_monitorable(f->rhs, out);
        return;
      case LtlKind::Next:
      case LtlKind::Always:
      case LtlKind::Eventually:
        collect_monitorable(f->lhs, out);
        return;
      default:
        return;
    }
  }

  // f with every occurrence of a selected subformula replaced by true, then
  // resimplified through the smart constructors.
  static LtlPtr subst_true(const LtlPtr& f, const std::vector<LtlPtr>& sel) {
    for (const auto& s : sel) {
      if (compare(f, s) == 0) return LtlFormula::make_true();
    }
    switch (f->kind) {
      case LtlKind::And:
        return mk_and({subst_true(f->lhs, sel), subst_true(f->rhs, sel)});
      case LtlKind::Or:
        return mk_or({subst_true(f->lhs, sel), subst_true(f->rhs, sel)});
      case LtlKind::Next:
        return mk_next(subst_true(f->lhs, sel));
      case LtlKind::Until:
        return mk_until(subst_true(f->lhs, sel), subst_true(f->rhs, sel));
      case LtlKind::Always:
        return mk_always(subst_true(f->lhs, sel));
      default:
        return f;
    }
  }

  // True iff g holds under every valuation of its remaining atoms (literals
  // and temporal subformulas alike): the selected commitments alone
  // discharge it, with nothing left to check at the jump instant.
  static bool discharged(const LtlPtr& g) {
    auto atoms = sorted_atoms(g);
    if (static_cast<int>(atoms.size()) > kMaxTableAtoms) return false;
    for (std::uint32_t mask = 0; mask < (1u << atoms.size()); ++mask) {
      if (!eval_over_atoms(g, atoms, mask)) return false;
    }
    return true;
  }

  // Minimal liveness commitments that discharge the whole residual.
  std::vector<int> jump_targets(const LtlPtr& f) {
    std::vector<LtlPtr> cands;
    collect_monitorable(f, cands);
    std::sort(cands.begin(), cands.end(),
              [](const LtlPtr& a, const LtlPtr& b) { return compare(a, b) < 0; });
    cands.erase(std::unique(cands.begin(), cands.end(),
                            [](const LtlPtr& a, const LtlPtr& b) {
                              return compare(a, b) == 0;
                            }),
                cands.end());
    if (static_cast<int>(cands.size()) > kMaxTableAtoms) return {};
    std::vector<Monitorable> classes;
    for (const auto& c : cands) classes.push_back(*classify_liveness(c));
    std::vector<std::uint32_t> good;  // subsets of `cands` discharging f
    for (std::uint32_t s = 1; s < (1u << cands.size()); ++s) {
      std::vector<LtlPtr> sel;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        if ((s >> k) & 1u) sel.push_back(cands[k]);
      }
      if (discharged(subst_true(f, sel))) good.push_back(s);
    }
    std::vector<int> targets;
    for (std::uint32_t s : good) {
      bool minimal = true;
      for (std::uint32_t t : good) {
        if (t != s && (t & s) == t) {
          minimal = false;
          break;
        }
      }
      if (!minimal) continue;
      std::vector<LtlPtr> maintain, recur;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        if (!((s >> k) & 1u)) continue;
        (classes[k].recurrence ? recur : maintain).push_back(classes[k].formula);
      }
      auto lt = [](const LtlPtr& a, const LtlPtr& b) { return compare(a, b) < 0; };
      auto eq = [](const LtlPtr& a, const LtlPtr& b) { return compare(a, b) == 0; };
      std::sort(maintain.begin(), maintain.end(), lt);
      maintain.erase(std::unique(maintain.begin(), maintain.end(), eq),
                     maintain.end());
      std::sort(recur.begin(), recur.end(), lt);
      recur.erase(std::unique(recur.begin(), recur.end(), eq), recur.end());
      MonitorInfo m;
      m.maintain = std::move(maintain);
      m.recur = std::move(recur);
      targets.push_back(intern_monitor(std::move(m)));
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    return targets;
  }
};

std::string residual_name(const LtlPtr& f) { return to_string(f); }

std::string monitor_name(const MonitorInfo& m) {
  std::ostringstream os;
  os << "mon(";
  bool first = true;
  for (const auto& g : m.maintain) {
    if (!first) os << ", ";
    os << "G " << to_string(g);
    first = false;
  }
  for (std::size_t i = 0; i < m.recur.size(); ++i) {
    if (!first) os << ", ";
    os << "GF " << to_string(m.recur[i]);
    first = false;
  }
  if (!m.recur.empty()) os << "; i=" << m.index << (m.wrapped ? "*" : "");
  os << ")";
  return os.str();
}

}  // namespace

Ldba build_ldba(const LtlPtr& f, const Alphabet& alphabet) {
  LtlPtr init = resimplify(normalize(f));
  check_supported(init);

  Builder b{alphabet};
  int q0 = b.intern_residual(init);

  std::vector<std::vector<int>> delta;
  std::vector<std::vector<int>> eps;
  const std::uint32_t letters = alphabet.num_assignments();

  while (!b.queue.empty()) {
    int id = b.queue.front();
    b.queue.pop_front();
    if (static_cast<int>(delta.size()) <= id) {
      delta.resize(b.nodes.size());
      eps.resize(b.nodes.size());
    }
    std::vector<int> row(letters);
    std::vector<int> jumps;
    const Builder::Node node = b.nodes[id];  // copy; nodes may reallocate
    switch (node.type) {
      case Builder::NodeType::Top:
        for (std::uint32_t w = 0; w < letters; ++w) row[w] = id;
        break;
      case Builder::NodeType::Sink:
        for (std::uint32_t w = 0; w < letters; ++w) row[w] = id;
        break;
      case Builder::NodeType::Residual: {
        for (std::uint32_t w = 0; w < letters; ++w) {
          row[w] = b.intern_residual(prog(node.residual, Assignment{w}));
        }
        jumps = b.jump_targets(node.residual);
        break;
      }
      case Builder::NodeType::Monitor: {
        const MonitorInfo& m = node.mon;
        for (std::uint32_t w = 0; w < letters; ++w) {
          Assignment a{w};
          bool ok = true;
          for (const auto& g : m.maintain) {
            if (!eval_prop(g, a)) {
              ok = false;
              break;
            }
          }
          if (!ok) {
            row[w] = b.intern_sink();
            continue;
          }
          if (m.recur.empty()) {
            row[w] = id;
            continue;
          }
          MonitorInfo next = m;
          next.wrapped = false;
          if (eval_prop(m.recur[m.index], a)) {
            next.index = (m.index + 1) % static_cast<int>(m.recur.size());
            next.wrapped = next.index == 0;
          }
          row[w] = b.intern_monitor(std::move(next));
        }
        break;
      }
    }
    delta.resize(std::max(delta.size(), b.nodes.size()));
    eps.resize(std::max(eps.size(), b.nodes.size()));
    delta[id] = std::move(row);
    eps[id] = std::move(jumps);
  }

  // Assemble with BFS-discovery indices (interning order is BFS order).
  Ldba out;
  out.alphabet = alphabet;
  out.initial = q0;
  out.delta = std::move(delta);
  out.eps = std::move(eps);
  out.states.resize(b.nodes.size());
  out.monitor.resize(b.nodes.size());
  for (std::size_t i = 0; i < b.nodes.size(); ++i) {
    const auto& node = b.nodes[i];
    Ldba::State st;
    switch (node.type) {
      case Builder::NodeType::Top:
        st.name = "true";
        st.accepting = true;
        st.deterministic = true;
        break;
      case Builder::NodeType::Sink:
        st.name = "false";
        st.accepting = false;
        st.deterministic = true;
        out.sink = static_cast<int>(i);
        break;
      case Builder::NodeType::Residual:
        st.name = residual_name(node.residual);
        st.accepting = false;
        st.deterministic = false;
        break;
      case Builder::NodeType::Monitor:
        st.name = monitor_name(node.mon);
        st.accepting = node.mon.recur.empty() || node.mon.wrapped;
        st.deterministic = true;
        out.monitor[i] = node.mon;
        break;
    }
    out.states[i] = std::move(st);
  }
  return out;
}

int ldba_step(const Ldba& b, int q, Assignment a) { return b.step(q, a); }

AssignmentSet Ldba::edge_guard(int q, int q_next) const {
  AssignmentSet out;
  for (std::uint32_t w = 0; w < alphabet.num_assignments(); ++w) {
    if (delta[q][w] == q_next) out.push_back(Assignment{w});
  }
  return out;
}

std::vector<char> Ldba::universally_accepting() const {
  std::vector<char> in(states.size());
  for (std::size_t q = 0; q < states.size(); ++q) in[q] = states[q].accepting;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t q = 0; q < states.size(); ++q) {
      if (!in[q]) continue;
      for (int next : delta[q]) {
        if (!in[next]) {
          in[q] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  return in;
}

namespace {

// Tarjan SCC over the (state, lasso position) configuration graph.
struct LassoAcceptance {
  const Ldba& b;
  const LassoWord& w;
  int n;
  std::vector<int> index_of, low, stack;
  std::vector<char> on_stack;
  int counter = 0;
  bool accepted = false;

  LassoAcceptance(const Ldba& b_, const LassoWord& w_)
      : b(b_), w(w_), n(w_.length()) {
    int total = b.num_states() * n;
    index_of.assign(total, -1);
    low.assign(total, 0);
    on_stack.assign(total, 0);
  }

  int config(int q, int pos) const { return q * n + pos; }

  void successors(int c, std::vector<int>& out) const {
    int q = c / n, pos = c % n;
    out.clear();
    out.push_back(config(b.delta[q][w.at(pos).bits], w.next(pos)));
    for (int t : b.eps[q]) out.push_back(config(t, pos));
  }

  // Iterative Tarjan; flags an SCC as accepting when it is cyclic and
  // contains a configuration with an accepting automaton state.
  void run(int start) {
    struct Frame {
      int c;
      std::vector<int> succ;
      std::size_t next = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({start, {}});
    successors(start, frames.back().succ);
    index_of[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = 1;

    while (!frames.empty() && !accepted) {
      Frame& fr = frames.back();
      if (fr.next < fr.succ.size()) {
        int t = fr.succ[fr.next++];
        if (index_of[t] == -1) {
          frames.push_back({t, {}});
          successors(t, frames.back().succ);
          index_of[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = 1;
        } else if (on_stack[t]) {
          low[fr.c] = std::min(low[fr.c], index_of[t]);
        }
        continue;
      }
      int c = fr.c;
      frames.pop_back();
      if (!frames.empty()) {
        low[frames.back().c] = std::min(low[frames.back().c], low[c]);
      }
      if (low[c] == index_of[c]) {
        // Pop one SCC.
        std::vector<int> component;
        while (true) {
          int t = stack.back();
          stack.pop_back();
          on_stack[t] = 0;
          component.push_back(t);
          if (t == c) break;
        }
        bool has_accepting = false;
        for (int t : component) {
          if (b.states[t / n].accepting) {
            has_accepting = true;
            break;
          }
        }
        if (!has_accepting) continue;
        bool cyclic = component.size() > 1;
        if (!cyclic) {
          // Single configuration: accepting only with a self-loop.
          std::vector<int> succ;
          successors(c, succ);
          cyclic = std::find(succ.begin(), succ.end(), c) != succ.end();
        }
        if (cyclic) accepted = true;
      }
    }
  }
};

}  // namespace

bool accepts_lasso(const Ldba& b, const LassoWord& w) {
  LassoAcceptance search(b, w);
  search.run(search.config(b.initial, 0));
  return search.accepted;
}

std::string to_dot(const Ldba& b, const FormulaCache* cache) {
  std::ostringstream os;
  os << "digraph ldba {\n  rankdir=LR;\n  init [shape=point];\n";
  for (int q = 0; q < b.num_states(); ++q) {
    os << "  q" << q << " [label=\"q" << q << "\\n" << b.states[q].name
       << "\", shape=" << (b.states[q].accepting ? "doublecircle" : "circle")
       << "];\n";
  }
  os << "  init -> q" << b.initial << ";\n";
  for (int q = 0; q < b.num_states(); ++q) {
    std::vector<int> targets = b.delta[q];
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int t : targets) {
      AssignmentSet guard = b.edge_guard(q, t);
      std::string label;
      if (cache) {
        AssignmentSet restricted;
        for (Assignment a : guard) {
          if (set_contains(cache->universe(), a)) restricted.push_back(a);
        }
        label = to_string(cache->lookup(restricted));
      } else {
        label = to_string(dnf_of(guard, b.alphabet));
      }
      os << "  q" << q << " -> q" << t << " [label=\"" << label << "\"];\n";
    }
    for (int t : b.eps[q]) {
      os << "  q" << q << " -> q" << t << " [label=\"eps\", style=dashed];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_json(const Ldba& b) {
  nlohmann::ordered_json j;
  j["propositions"] = b.alphabet.props();
  j["initial"] = b.initial;
  j["states"] = nlohmann::ordered_json::array();
  for (int q = 0; q < b.num_states(); ++q) {
    j["states"].push_back({{"id", q},
                           {"name", b.states[q].name},
                           {"accepting", b.states[q].accepting},
                           {"deterministic", b.states[q].deterministic}});
  }
  j["delta"] = nlohmann::ordered_json::array();
  for (int q = 0; q < b.num_states(); ++q) {
    std::vector<int> targets = b.delta[q];
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int t : targets) {
      AssignmentSet guard = b.edge_guard(q, t);
      j["delta"].push_back({{"from", q},
                            {"guard", to_string(dnf_of(guard, b.alphabet))},
                            {"to", t}});
    }
  }
  j["eps"] = nlohmann::ordered_json::array();
  for (int q = 0; q < b.num_states(); ++q) {
    for (int t : b.eps[q]) {
      j["eps"].push_back({{"from", q}, {"to", t}});
    }
  }
  return j.dump(2);
}

}  // namespace ltlplan
