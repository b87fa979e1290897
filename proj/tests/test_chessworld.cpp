#include <map>
#include <random>

#include "doctest.h"
#include "ltlplan/chessworld.hpp"
#include "ltlplan/errors.hpp"

using namespace ltlplan;

namespace {
Assignment named(const Board& b, std::initializer_list<const char*> props) {
  Assignment a{};
  for (const char* p : props) a.bits |= 1u << b.alphabet().index_of(p);
  return a;
}
}  // namespace

TEST_CASE("alphabet order is fixed") {
  Board b = Board::default_board();
  CHECK(b.alphabet().props() ==
        std::vector<std::string>{"queen", "rook", "knight", "bishop", "pawn"});
}

TEST_CASE("default board pinned labels") {
  Board b = Board::default_board();
  CHECK(b.label({0, 0}) == named(b, {"queen"}));
  CHECK(b.label({0, 7}) == named(b, {"queen", "rook"}));
  CHECK(b.label({1, 6}) == named(b, {"queen", "rook", "pawn"}));
  CHECK(b.label({0, 5}) == named(b, {"queen", "bishop", "pawn"}));
  CHECK(b.label({7, 7}) == named(b, {"rook"}));
  CHECK(b.label({2, 3}) == named(b, {"bishop"}));
  CHECK(b.label({3, 4}) == named(b, {"bishop"}));
  CHECK(b.label({6, 6}) == named(b, {"knight"}));
  // The pawn blocks the queen's diagonal beyond (1,6).
  CHECK_FALSE(b.label({2, 5}).contains(b.alphabet().index_of("queen")));
}

TEST_CASE("default board realizes exactly twelve non-empty labels") {
  Board b = Board::default_board();
  AssignmentSet labels = b.possible_assignments();
  CHECK(labels.size() == 13);  // twelve piece sets plus the empty label
  CHECK(set_contains(labels, Assignment{0}));
  AssignmentSet expected;
  for (auto sets : {std::initializer_list<const char*>{"queen"},
                    {"rook"},
                    {"knight"},
                    {"bishop"},
                    {"pawn"},
                    {"queen", "rook"},
                    {"queen", "bishop"},
                    {"queen", "pawn", "bishop"},
                    {"queen", "pawn", "rook"},
                    {"knight", "rook"},
                    {"bishop", "rook"},
                    {"knight", "bishop"}}) {
    expected.push_back(named(b, sets));
  }
  expected.push_back(Assignment{0});
  normalize_set(expected);
  CHECK(labels == expected);
}

TEST_CASE("board json round trip and validation") {
  Board b = Board::default_board();
  Board again = Board::load(b.to_json());
  CHECK(again.size() == b.size());
  for (int i = 0; i < 5; ++i) CHECK(again.piece(i) == b.piece(i));
  CHECK_THROWS_AS(
      Board::load(R"({"queen":[0,0],"rook":[0,0],"knight":[1,0],)"
                  R"("bishop":[2,0],"pawn":[3,0]})"),
      ConfigError);
  CHECK_THROWS_AS(
      Board::load(R"({"queen":[9,0],"rook":[1,0],"knight":[2,0],)"
                  R"("bishop":[3,0],"pawn":[4,0]})"),
      ConfigError);
}

TEST_CASE("moves clamp at the edges") {
  Board b = Board::default_board();
  EnvState st{{0, 0}, 0};
  EnvState west = step_env(b, st, Action::W);
  CHECK(west.pos == Square{0, 0});
  CHECK(west.steps == 1);
  CHECK(step_env(b, st, Action::SW).pos == Square{0, 0});
  CHECK(step_env(b, st, Action::NE).pos == Square{1, 1});
  CHECK(step_env(b, st, Action::Stay).pos == Square{0, 0});
  EnvState corner{{7, 7}, 0};
  CHECK(step_env(b, corner, Action::N).pos == Square{7, 7});
  CHECK(step_env(b, corner, Action::E).pos == Square{7, 7});
}

TEST_CASE("reset is uniform over unoccupied squares") {
  Board b = Board::default_board();
  auto empty = b.empty_squares();
  REQUIRE(empty.size() == 59);
  std::mt19937_64 rng(7);
  std::map<int, int> counts;
  const int n = 59 * 200;
  for (int i = 0; i < n; ++i) {
    EnvState st = reset(b, rng);
    CHECK(st.steps == 0);
    counts[b.index(st.pos)]++;
  }
  CHECK(counts.size() == empty.size());
  for (Square s : empty) {
    int c = counts[b.index(s)];
    // Expected 200 per square; allow five standard deviations.
    CHECK(c > 130);
    CHECK(c < 270);
  }
  // Never starts on a piece.
  for (int i = 0; i < 5; ++i) CHECK(counts.count(b.index(b.piece(i))) == 0);
}

TEST_CASE("smaller boards are supported") {
  Board b({Square{0, 2}, Square{2, 2}, Square{2, 0}, Square{0, 0},
           Square{1, 2}},
          3);
  CHECK(b.num_squares() == 9);
  CHECK(b.empty_squares().size() == 4);
  CHECK_THROWS_AS(Board({Square{0, 3}, Square{2, 2}, Square{2, 0},
                         Square{0, 0}, Square{1, 2}},
                        3),
                  ConfigError);
}
