#include "ltlplan/chessworld.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ltlplan/errors.hpp"
#include "nlohmann/json.hpp"

namespace ltlplan {

namespace {

constexpr int kQueen = 0, kRook = 1, kKnight = 2, kBishop = 3, kPawn = 4;

constexpr int kDirs8[8][2] = {{0, 1},  {1, 1},   {1, 0},  {1, -1},
                              {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
constexpr int kOrtho[4][2] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
constexpr int kDiag[4][2] = {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};
constexpr int kKnightJumps[8][2] = {{1, 2},  {2, 1},  {2, -1}, {1, -2},
                                    {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};

}  // namespace

Board::Board(std::array<Square, 5> pieces, int size)
    : size_(size), pieces_(pieces) {
  if (size < 2 || size > 8) throw ConfigError("board size out of range");
  for (int i = 0; i < 5; ++i) {
    const Square s = pieces_[i];
    if (s.x < 0 || s.x >= size_ || s.y < 0 || s.y >= size_) {
      throw ConfigError(std::string(kPieceNames[i]) +
                        " placed off the board");
    }
    for (int j = 0; j < i; ++j) {
      if (pieces_[j] == s) {
        throw ConfigError(std::string(kPieceNames[i]) + " and " +
                          kPieceNames[j] + " share a square");
      }
    }
  }
  alphabet_ = Alphabet(
      {kPieceNames[0], kPieceNames[1], kPieceNames[2], kPieceNames[3],
       kPieceNames[4]});
  labels_.assign(num_squares(), Assignment{});

  auto occupied = [&](int x, int y) {
    for (const Square& p : pieces_) {
      if (p.x == x && p.y == y) return true;
    }
    return false;
  };
  auto mark = [&](int piece, int x, int y) {
    if (x < 0 || x >= size_ || y < 0 || y >= size_) return;
    labels_[y * size_ + x].bits |= 1u << piece;
  };
  // Slide one ray; attacked squares include the first blocker's square.
  auto slide = [&](int piece, Square from, int dx, int dy) {
    int x = from.x + dx, y = from.y + dy;
    while (x >= 0 && x < size_ && y >= 0 && y < size_) {
      mark(piece, x, y);
      if (occupied(x, y)) break;
      x += dx;
      y += dy;
    }
  };

  for (int i = 0; i < 5; ++i) mark(i, pieces_[i].x, pieces_[i].y);
  for (auto d : kDirs8) slide(kQueen, pieces_[kQueen], d[0], d[1]);
  for (auto d : kOrtho) slide(kRook, pieces_[kRook], d[0], d[1]);
  for (auto d : kDiag) slide(kBishop, pieces_[kBishop], d[0], d[1]);
  for (auto d : kKnightJumps) {
    mark(kKnight, pieces_[kKnight].x + d[0], pieces_[kKnight].y + d[1]);
  }
  mark(kPawn, pieces_[kPawn].x - 1, pieces_[kPawn].y - 1);
  mark(kPawn, pieces_[kPawn].x + 1, pieces_[kPawn].y - 1);
}

Board Board::load(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("board config: ") + e.what());
  }
  std::array<Square, 5> pieces;
  for (int i = 0; i < 5; ++i) {
    const char* name = kPieceNames[i];
    if (!j.contains(name) || !j[name].is_array() || j[name].size() != 2) {
      throw ConfigError(std::string("board config: missing or malformed ") +
                        name);
    }
    pieces[i] = {j[name][0].get<int>(), j[name][1].get<int>()};
  }
  int size = j.value("size", 8);
  return Board(pieces, size);
}

Board Board::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open board file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load(ss.str());
}

Board Board::default_board() {
  // Found by offline search: the non-empty labels are exactly the 12
  // expected assignment sets, and every reach-avoid task in the shipped
  // suites is feasible from every empty square.
  return Board({Square{0, 7}, Square{1, 7}, Square{6, 6}, Square{2, 3},
                Square{1, 6}},
               8);
}

std::string Board::to_json() const {
  nlohmann::ordered_json j;
  for (int i = 0; i < 5; ++i) {
    j[kPieceNames[i]] = {pieces_[i].x, pieces_[i].y};
  }
  j["size"] = size_;
  return j.dump(2);
}

AssignmentSet Board::possible_assignments() const {
  AssignmentSet set(labels_.begin(), labels_.end());
  normalize_set(set);
  return set;
}

std::vector<Square> Board::empty_squares() const {
  std::vector<Square> out;
  for (int i = 0; i < num_squares(); ++i) {
    Square s = square(i);
    bool occupied = false;
    for (const Square& p : pieces_) {
      if (p == s) {
        occupied = true;
        break;
      }
    }
    if (!occupied) out.push_back(s);
  }
  return out;
}

std::string Board::ascii() const {
  static constexpr char kLetters[5] = {'Q', 'R', 'N', 'B', 'P'};
  std::ostringstream os;
  for (int y = size_ - 1; y >= 0; --y) {
    os << y << ' ';
    for (int x = 0; x < size_; ++x) {
      char c = '.';
      Assignment a = labels_[y * size_ + x];
      if (a.bits != 0) c = '+';
      for (int i = 0; i < 5; ++i) {
        if (pieces_[i].x == x && pieces_[i].y == y) c = kLetters[i];
      }
      os << c << ' ';
    }
    os << '\n';
  }
  os << "  ";
  for (int x = 0; x < size_; ++x) os << x << ' ';
  os << '\n';
  return os.str();
}

EnvState reset(const Board& b, std::mt19937_64& rng) {
  std::vector<Square> empty = b.empty_squares();
  std::uniform_int_distribution<std::size_t> pick(0, empty.size() - 1);
  return EnvState{empty[pick(rng)], 0};
}

EnvState step_env(const Board& b, EnvState st, Action a) {
  static constexpr int kDelta[kNumActions][2] = {
      {0, 1},  {1, 1},   {1, 0},  {1, -1}, {0, -1},
      {-1, -1}, {-1, 0}, {-1, 1}, {0, 0}};
  int x = st.pos.x + kDelta[static_cast<int>(a)][0];
  int y = st.pos.y + kDelta[static_cast<int>(a)][1];
  if (x >= 0 && x < b.size() && y >= 0 && y < b.size()) {
    st.pos = {x, y};
  }
  st.steps += 1;
  return st;
}

const char* action_name(Action a) {
  static constexpr const char* kNames[kNumActions] = {
      "N", "NE", "E", "SE", "S", "SW", "W", "NW", "stay"};
  return kNames[static_cast<int>(a)];
}

}  // namespace ltlplan
