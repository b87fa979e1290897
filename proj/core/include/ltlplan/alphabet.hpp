#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ltlplan {

/// One letter of the automaton alphabet: the subset of atomic propositions
/// true at an instant, encoded as a bitset over the ordered AP universe.
struct Assignment {
  std::uint32_t bits = 0;

  bool contains(int ap_index) const { return (bits >> ap_index) & 1u; }

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Sorted, duplicate-free set of assignments over a shared universe.
using AssignmentSet = std::vector<Assignment>;

/// The ordered atomic-proposition universe. Fixes the bit layout of
/// assignments and the iteration order over 2^AP.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> props);

  int size() const { return static_cast<int>(props_.size()); }
  std::uint32_t num_assignments() const { return 1u << props_.size(); }

  const std::vector<std::string>& props() const { return props_; }
  const std::string& prop(int index) const { return props_[index]; }

  /// Index of a proposition name, or -1 if absent.
  int index_of(const std::string& name) const;

  /// All 2^|AP| assignments in increasing bit order.
  AssignmentSet all_assignments() const;

  /// Renders an assignment as "{a, c}" ("{}" when empty).
  std::string to_string(Assignment a) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::vector<std::string> props_;
};

/// Canonicalizes a set in place: sorted, unique.
void normalize_set(AssignmentSet& set);

/// Set difference universe \ set, both sorted.
AssignmentSet complement_set(const AssignmentSet& set,
                             const AssignmentSet& universe);

bool set_contains(const AssignmentSet& set, Assignment a);

/// Finite representation prefix . cycle^omega of an ultimately periodic
/// infinite trace. The cycle is never empty.
struct LassoWord {
  std::vector<Assignment> prefix;
  std::vector<Assignment> cycle;

  int length() const {
    return static_cast<int>(prefix.size() + cycle.size());
  }

  /// Letter at position i of the induced infinite word.
  Assignment at(int i) const {
    if (i < static_cast<int>(prefix.size())) return prefix[i];
    int j = (i - static_cast<int>(prefix.size())) %
            static_cast<int>(cycle.size());
    return cycle[j];
  }

  /// Successor position in the lasso graph (wraps into the cycle).
  int next(int pos) const {
    return pos + 1 < length() ? pos + 1 : static_cast<int>(prefix.size());
  }

  /// Equivalent lasso with one cycle iteration shifted into the prefix.
  LassoWord unrolled_once() const;
};

}  // namespace ltlplan
