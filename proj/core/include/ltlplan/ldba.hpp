#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltlplan/alphabet.hpp"
#include "ltlplan/formula_cache.hpp"
#include "ltlplan/ltl.hpp"

namespace ltlplan {

/// Deterministic-component monitor payload: propositional formulas that must
/// hold forever (maintain) and a round-robin list of recurrence obligations.
struct MonitorInfo {
  std::vector<LtlPtr> maintain;
  std::vector<LtlPtr> recur;
  int index = 0;       // next awaited obligation in recur
  bool wrapped = false;  // a full round of obligations just completed
};

/// Limit-deterministic Buchi automaton. States are indexed by first
/// discovery (BFS from the initial state); delta is total over
/// states x 2^AP. Immutable after construction.
struct Ldba {
  struct State {
    std::string name;
    bool accepting = false;
    bool deterministic = false;  // member of Q_D
  };

  Alphabet alphabet;
  std::vector<State> states;
  int initial = 0;
  int sink = -1;  // rejecting bottom state, -1 if unreachable
  std::vector<std::vector<int>> delta;  // [state][assignment bits]
  std::vector<std::vector<int>> eps;    // jump targets, sorted
  std::vector<std::optional<MonitorInfo>> monitor;  // per state

  int num_states() const { return static_cast<int>(states.size()); }

  int step(int q, Assignment a) const { return delta[q][a.bits]; }

  /// Assignments (over the full alphabet) labeling the edge q -> q'.
  AssignmentSet edge_guard(int q, int q_next) const;

  /// States from which every infinite continuation is accepting: the
  /// greatest subset of the accepting states closed under delta.
  std::vector<char> universally_accepting() const;
};

/// Constructs an LDBA accepting exactly the traces satisfying f.
///
/// States of the nondeterministic component are progression residuals,
/// deduplicated by propositional equivalence over their temporal atoms.
/// Persistence and recurrence obligations jump via epsilon transitions into
/// deterministic monitors; conjunctions of recurrence obligations are
/// degeneralized with a round-robin counter.
///
/// Throws UnsupportedFragmentError when f contains an Always whose argument
/// is neither propositional nor an Eventually of a propositional formula.
Ldba build_ldba(const LtlPtr& f, const Alphabet& alphabet);

/// Convenience: delta lookup, mirroring Ldba::step.
int ldba_step(const Ldba& b, int q, Assignment a);

/// True iff some run over prefix.cycle^omega (with epsilon jumps at any
/// point) visits accepting states infinitely often; decided by cycle
/// detection on (state, lasso position) pairs.
bool accepts_lasso(const Ldba& b, const LassoWord& w);

/// Graphviz export; edge guards use the cache's minimal formulas when a
/// cache is supplied, otherwise DNF.
std::string to_dot(const Ldba& b, const FormulaCache* cache = nullptr);

/// JSON export: {states:[{id,accepting,deterministic}], initial,
/// delta:[{from,guard,to}], eps:[{from,to}]}.
std::string to_json(const Ldba& b);

/// Evaluates a propositional formula (no temporal operators) on one
/// assignment.
bool eval_prop(const LtlPtr& f, Assignment a);

bool is_propositional(const LtlPtr& f);

}  // namespace ltlplan
