#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "ltlplan/errors.hpp"
#include "ltlplan/ltl.hpp"

using namespace ltlplan;

namespace {
const Alphabet kAb({"a", "b", "c"});
constexpr Assignment kA{1}, kB{2}, kAB{3}, kC{4}, kNone{0};
}  // namespace

TEST_CASE("parser renders back to itself") {
  for (const char* s : {"a", "true", "!a", "a & b", "a | b & c", "X a",
                        "F (a & F b)", "G (a | b)", "a U b U c", "!(a U b)",
                        "F G a", "G F a", "X !a | true"}) {
    LtlPtr f = parse_ltl(s, kAb);
    CHECK(to_string(f) == to_string(parse_ltl(to_string(f), kAb)));
    CHECK(structurally_equal(f, parse_ltl(to_string(f), kAb)));
  }
}

TEST_CASE("parser precedence and shape") {
  CHECK(to_string(parse_ltl("a & b | c", kAb)) == "a & b | c");
  CHECK(to_string(parse_ltl("(a | b) & c", kAb)) == "(a | b) & c");
  CHECK(to_string(parse_ltl("a U (b U c)", kAb)) == "a U b U c");  // right-assoc
  LtlPtr f = parse_ltl("F (a & F b)", kAb);
  CHECK(f->kind == LtlKind::Eventually);
  CHECK(f->lhs->kind == LtlKind::And);
}

TEST_CASE("parse errors carry offsets") {
  CHECK_THROWS_AS(parse_ltl("F (a &", kAb), ParseError);
  CHECK_THROWS_AS(parse_ltl("a b", kAb), ParseError);
  CHECK_THROWS_AS(parse_ltl("", kAb), ParseError);
  try {
    parse_ltl("a & zebra", kAb);
    CHECK(false);
  } catch (const UnknownPropositionError& e) {
    CHECK(e.name() == "zebra");
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("normalize pushes negations and expands duals") {
  auto norm = [](const char* s) {
    return to_string(normalize(parse_ltl(s, kAb)));
  };
  CHECK(norm("!F a") == "G !a");
  CHECK(norm("!G a") == "true U !a");
  CHECK(norm("!(a & b)") == "!a | !b");
  CHECK(norm("!(a U b)") == "!b U (!a & !b) | G !b");
  CHECK(norm("F (a & F b)") == "true U (a & true U b)");
  CHECK(norm("G F a") == "G (true U a)");
}

TEST_CASE("satisfies_lasso on pinned words") {
  LassoWord ba{{kB}, {kA}};    // b . a^omega
  LassoWord ab{{}, {kA, kB}};  // (a b)^omega
  CHECK(satisfies_lasso(ba, parse_ltl("F (G a)", kAb)));
  CHECK_FALSE(satisfies_lasso(ba, parse_ltl("G a", kAb)));
  CHECK(satisfies_lasso(ba, parse_ltl("b U a", kAb)));
  CHECK(satisfies_lasso(ba, parse_ltl("X a", kAb)));
  CHECK(satisfies_lasso(ab, parse_ltl("G (F b)", kAb)));
  CHECK_FALSE(satisfies_lasso(ab, parse_ltl("G a", kAb)));
  CHECK(satisfies_lasso(LassoWord{{}, {kNone}}, parse_ltl("true", kAb)));
  CHECK_FALSE(satisfies_lasso(LassoWord{{}, {kAB}}, parse_ltl("F c", kAb)));
}

TEST_CASE("lasso accessors") {
  LassoWord w{{kA, kB}, {kC, kNone}};
  CHECK(w.length() == 4);
  CHECK(w.at(0) == kA);
  CHECK(w.at(3) == kNone);
  CHECK(w.at(4) == kC);   // wraps into the cycle
  CHECK(w.at(17) == kNone);
  CHECK(w.next(3) == 2);  // back to the cycle start
}

TEST_CASE("property: normalize preserves lasso satisfaction") {
  std::mt19937_64 rng(0xACDC01);
  auto lassos = testgen::all_lassos(kAb, 1, 2);
  for (int i = 0; i < 60; ++i) {
    LtlPtr f = testgen::random_fragment(kAb, 3, rng);
    LtlPtr g = normalize(f);
    for (const auto& w : lassos) {
      if (satisfies_lasso(w, f) != satisfies_lasso(w, g)) {
        CAPTURE(to_string(f));
        CAPTURE(to_string(g));
        REQUIRE(false);
      }
    }
  }
  CHECK(true);
}

TEST_CASE("property: unrolling a lasso once changes nothing") {
  std::mt19937_64 rng(0xACDC02);
  auto lassos = testgen::all_lassos(kAb, 2, 2);
  for (int i = 0; i < 40; ++i) {
    LtlPtr f = testgen::random_fragment(kAb, 2, rng);
    for (const auto& w : lassos) {
      LassoWord u = w.unrolled_once();
      if (satisfies_lasso(w, f) != satisfies_lasso(u, f)) {
        CAPTURE(to_string(f));
        REQUIRE(false);
      }
    }
  }
  CHECK(true);
}
