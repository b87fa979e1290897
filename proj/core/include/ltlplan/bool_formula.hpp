#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ltlplan/alphabet.hpp"

namespace ltlplan {

enum class BoolKind { True, False, Var, Not, And, Or };

class BoolFormula;
using BoolPtr = std::shared_ptr<const BoolFormula>;

/// Propositional formula over the AP universe. And/Or are n-ary with at
/// least two children in deterministic (variable-order lexicographic) order.
class BoolFormula {
public:
  BoolKind kind;
  int var = -1;           // AP index, only for Var
  std::string var_name;   // only for Var
  BoolPtr child;          // only for Not
  std::vector<BoolPtr> children;  // only for And/Or

  static BoolPtr make_true();
  static BoolPtr make_false();
  static BoolPtr make_var(int index, std::string name);
  static BoolPtr make_not(BoolPtr f);
  // Single-child And/Or collapse to the child.
  static BoolPtr make_and(std::vector<BoolPtr> children);
  static BoolPtr make_or(std::vector<BoolPtr> children);
};

bool evaluate(const BoolPtr& f, Assignment a);

/// { a in universe : a |= f }, by direct evaluation.
AssignmentSet satisfying_set(const BoolPtr& f, const AssignmentSet& universe);

/// Operator-node count: Not counts 1; n-ary And/Or of arity m counts m-1.
int complexity(const BoolPtr& f);

/// Renders as e.g. "a & !c", "(a | b) & !(c | d)".
std::string to_string(const BoolPtr& f);

/// Disjunction of complete conjunctive terms, one per assignment, in
/// deterministic term order. Empty set yields False.
BoolPtr dnf_of(const AssignmentSet& set, const Alphabet& alphabet);

}  // namespace ltlplan
