#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ltlplan/alphabet.hpp"

namespace ltlplan {

/// Compass moves plus stay, in the fixed tie-breaking order.
enum class Action { N, NE, E, SE, S, SW, W, NW, Stay };
inline constexpr int kNumActions = 9;

struct Square {
  int x = 0;  // file, 0..size-1 left to right
  int y = 0;  // rank, 0..size-1 bottom to top

  friend bool operator==(const Square&, const Square&) = default;
};

/// Static board: five black pieces on an n x n grid (n = 8 by default),
/// plus the precomputed label table. A proposition labels a square when the
/// piece sits on it or attacks it; sliding pieces are blocked by the other
/// pieces; the pawn attacks diagonally toward decreasing rank. Pieces are
/// label sources only — the agent may enter their squares.
class Board {
public:
  static constexpr const char* kPieceNames[5] = {"queen", "rook", "knight",
                                                 "bishop", "pawn"};

  /// Pieces in kPieceNames order. Throws ConfigError on overlap or
  /// out-of-range coordinates.
  Board(std::array<Square, 5> pieces, int size = 8);

  /// Parses {"queen":[x,y], "rook":[x,y], ...} JSON, optional "size" field.
  static Board load(const std::string& json_text);
  static Board load_file(const std::string& path);

  /// The shipped default 8x8 layout.
  static Board default_board();

  int size() const { return size_; }
  Square piece(int index) const { return pieces_[index]; }

  /// Proposition universe, in kPieceNames order.
  const Alphabet& alphabet() const { return alphabet_; }

  Assignment label(Square s) const { return labels_[index(s)]; }

  /// Deduplicated labels over all squares (sorted; includes the empty
  /// assignment when some square is unattacked and unoccupied).
  AssignmentSet possible_assignments() const;

  std::vector<Square> empty_squares() const;  // not occupied by a piece

  int index(Square s) const { return s.y * size_ + s.x; }
  Square square(int index) const { return {index % size_, index / size_}; }
  int num_squares() const { return size_ * size_; }

  std::string ascii() const;
  std::string to_json() const;

private:
  int size_;
  std::array<Square, 5> pieces_;
  Alphabet alphabet_;
  std::vector<Assignment> labels_;  // indexed by square index
};

struct EnvState {
  Square pos;
  int steps = 0;
};

/// Uniform draw over squares not occupied by a piece; step counter 0.
EnvState reset(const Board& b, std::mt19937_64& rng);

/// One king move, clamped to the board (off-board moves are no-ops).
EnvState step_env(const Board& b, EnvState st, Action a);

const char* action_name(Action a);

}  // namespace ltlplan
