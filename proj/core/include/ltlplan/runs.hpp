#pragma once

#include <string>
#include <vector>

#include "ltlplan/formula_cache.hpp"
#include "ltlplan/ldba.hpp"

namespace ltlplan {

/// A simple path to an accepting cycle. `eps_edge[i]` marks edge
/// path[i] -> path[i+1] for i < |path|-1; the last entry marks the closing
/// edge path.back() -> path[loopback]. The loop portion contains at least
/// one accepting state.
struct RunPrefix {
  std::vector<int> path;
  std::vector<char> eps_edge;  // size == path.size()
  int loopback = 0;

  int loop_length() const {
    return static_cast<int>(path.size()) - loopback;
  }
};

/// Depth-first enumeration of simple paths from q that close into
/// themselves at or before the most recent accepting state. Successors are
/// visited in ascending state order, letter edges before epsilon edges, so
/// the output order is deterministic. Empty result means no accepting cycle
/// is reachable from q.
std::vector<RunPrefix> accepting_runs(const Ldba& b, int q);

/// { a in universe : delta(q, a) == q_next }.
AssignmentSet transition_assignments(const Ldba& b, int q, int q_next,
                                     const AssignmentSet& universe);

/// One planning obligation: either take the epsilon jump to `to`, or move
/// until the label satisfies beta_plus while never satisfying beta_minus.
struct SequenceItem {
  bool is_eps = false;
  int from = -1;
  int to = -1;
  BoolPtr beta_plus;        // null for epsilon items
  BoolPtr beta_minus;
  AssignmentSet plus_set;   // satisfying sets restricted to the universe
  AssignmentSet minus_set;
};

/// Rendering of a run as Boolean-formula obligations. When the accepting
/// loop is a pure self-loop whose guard covers the whole universe, the
/// sequence ends after the prefix items with `terminal` set instead of
/// being unrolled.
struct FormulaSequence {
  std::vector<SequenceItem> items;
  int loopback = 0;    // item index where a completed pass re-enters
  bool terminal = false;

  /// Stable serialization for value-table caching and interning.
  std::string canonical_key() const;
};

/// Default truncation length: one full pass plus two extra loop unrollings.
int default_truncation(const RunPrefix& r);

/// Maps a run to its formula sequence over the assignment universe.
/// Assignment edges become (beta_plus, beta_minus) pairs: beta_plus holds
/// exactly on assignments advancing the run, beta_minus exactly on
/// assignments leaving both the current state and the run. Epsilon edges
/// become epsilon items. The loop is unrolled until the sequence has H
/// items unless it terminates in a universal self-loop.
///
/// Throws InfeasibleRunError when some edge has an empty beta_plus set over
/// the universe.
FormulaSequence run_to_sequence(const Ldba& b, const RunPrefix& r,
                                const AssignmentSet& universe,
                                const FormulaCache& cache, int H);

}  // namespace ltlplan
