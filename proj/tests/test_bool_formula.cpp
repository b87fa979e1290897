#include "doctest.h"
#include "ltlplan/bool_formula.hpp"

using namespace ltlplan;

namespace {
const Alphabet kAb({"a", "b", "c"});
BoolPtr var(int i) { return BoolFormula::make_var(i, kAb.prop(i)); }
}  // namespace

TEST_CASE("evaluate and satisfying_set") {
  BoolPtr f = BoolFormula::make_and({var(0), BoolFormula::make_not(var(2))});
  CHECK(evaluate(f, Assignment{1}));        // {a}
  CHECK(evaluate(f, Assignment{3}));        // {a,b}
  CHECK_FALSE(evaluate(f, Assignment{5}));  // {a,c}
  CHECK_FALSE(evaluate(f, Assignment{0}));
  AssignmentSet sat = satisfying_set(f, kAb.all_assignments());
  CHECK(sat == AssignmentSet{Assignment{1}, Assignment{3}});
}

TEST_CASE("complexity counts operators") {
  CHECK(complexity(BoolFormula::make_true()) == 0);
  CHECK(complexity(var(0)) == 0);
  CHECK(complexity(BoolFormula::make_not(var(0))) == 1);
  // a & !c: one And (arity 2 -> 1) plus one Not.
  BoolPtr f = BoolFormula::make_and({var(0), BoolFormula::make_not(var(2))});
  CHECK(complexity(f) == 2);
  // a | b | c as one ternary Or counts 2.
  CHECK(complexity(BoolFormula::make_or({var(0), var(1), var(2)})) == 2);
}

TEST_CASE("single-child connectives collapse") {
  CHECK(to_string(BoolFormula::make_and({var(1)})) == "b");
  CHECK(to_string(BoolFormula::make_or({var(1)})) == "b");
}

TEST_CASE("dnf_of reproduces its input set") {
  AssignmentSet universe = kAb.all_assignments();
  AssignmentSet set{Assignment{0}, Assignment{3}, Assignment{6}};
  BoolPtr f = dnf_of(set, kAb);
  CHECK(satisfying_set(f, universe) == set);
  CHECK(to_string(dnf_of({}, kAb)) == "false");
  // Full universe DNF is still a formula satisfied everywhere.
  CHECK(satisfying_set(dnf_of(universe, kAb), universe) == universe);
}
