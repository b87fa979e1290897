#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ltlplan/alphabet.hpp"

namespace ltlplan {

enum class LtlKind {
  True,
  Prop,
  Not,
  And,
  Or,
  Next,
  Until,
  Eventually,
  Always,
};

class LtlFormula;
using LtlPtr = std::shared_ptr<const LtlFormula>;

/// Immutable LTL syntax tree node. Shared subtrees are fine; formulas are
/// never mutated after construction.
class LtlFormula {
public:
  LtlKind kind;
  int prop = -1;          // AP index, only for Prop
  std::string prop_name;  // only for Prop
  LtlPtr lhs;             // unary child / left child
  LtlPtr rhs;             // right child of And/Or/Until

  static LtlPtr make_true();
  static LtlPtr make_prop(int index, std::string name);
  static LtlPtr make_not(LtlPtr f);
  static LtlPtr make_and(LtlPtr a, LtlPtr b);
  static LtlPtr make_or(LtlPtr a, LtlPtr b);
  static LtlPtr make_next(LtlPtr f);
  static LtlPtr make_until(LtlPtr a, LtlPtr b);
  static LtlPtr make_eventually(LtlPtr f);
  static LtlPtr make_always(LtlPtr f);
};

bool structurally_equal(const LtlPtr& a, const LtlPtr& b);

/// Total order on formulas (kind, prop, children); used for canonical
/// child ordering inside the automaton construction.
int compare(const LtlPtr& a, const LtlPtr& b);

/// Concrete syntax rendering; reparsing the result yields an equal tree.
std::string to_string(const LtlPtr& f);

/// Parses the ASCII grammar: `true`, identifiers, `!`, `&`, `|`, `X`, `U`,
/// `F`, `G`, parentheses. Precedence, tightest first: unary {!, X, F, G},
/// `U` (right-associative), `&`, `|`.
LtlPtr parse_ltl(const std::string& text, const Alphabet& alphabet);

/// Rewrites into negation normal form over {True, !True, literals, And, Or,
/// Next, Until, Always}: F/G expanded or dualized, negations pushed to
/// literal level. Semantically equivalent to the input.
LtlPtr normalize(const LtlPtr& f);

bool is_true(const LtlPtr& f);
bool is_false(const LtlPtr& f);  // the canonical !true literal
LtlPtr ltl_false();

/// Collects proposition indices occurring in f.
std::vector<int> collect_props(const LtlPtr& f);

/// Exact satisfaction of prefix.cycle^omega |= f via least/greatest fixpoint
/// evaluation over the lasso graph positions. Handles every node kind
/// directly, independent of the automaton pipeline.
bool satisfies_lasso(const LassoWord& word, const LtlPtr& f);

}  // namespace ltlplan
