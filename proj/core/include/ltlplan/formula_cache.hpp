#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ltlplan/bool_formula.hpp"

namespace ltlplan {

/// Parameters of the template families, defaulting to the experimental
/// values; all ranges are inclusive upper bounds.
struct TemplateParams {
  int or_and_x = 4;   // or-x-and-y: |disjunction| up to x
  int or_and_y = 2;   //              |conjunction| up to y
  int and_not_x = 2;  // and-x-and-not-y
  int and_not_y = 3;
  int or_not_x = 4;   // or-x-and-not-y
  int or_not_y = 4;
  int or_notz_x = 4;  // or-x-and-not-zy
  int or_notz_y = 3;
  int or_notz_z = 2;
};

/// Injective mapping from assignment sets (subsets of the realizable
/// universe) to small template formulas. Built once; immutable afterwards.
///
/// Templates are inserted family by family, each formula immediately
/// followed by its complement; for each set the lowest-complexity template
/// wins, insertion order breaking ties. The empty set and the full universe
/// are seeded as False/True before any family runs.
class FormulaCache {
public:
  FormulaCache(Alphabet alphabet, AssignmentSet universe,
               TemplateParams params = {});

  /// Cached template if the set was reached during construction, otherwise
  /// the DNF over the set. satisfying_set(result, universe) == set always.
  BoolPtr lookup(const AssignmentSet& set) const;

  /// Cached formula only; nullopt on a miss.
  std::optional<BoolPtr> cached(const AssignmentSet& set) const;

  /// Entries in insertion order.
  const std::vector<std::pair<AssignmentSet, BoolPtr>>& entries() const {
    return entries_;
  }

  const AssignmentSet& universe() const { return universe_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const TemplateParams& params() const { return params_; }

private:
  void try_insert(const BoolPtr& formula);

  Alphabet alphabet_;
  AssignmentSet universe_;
  TemplateParams params_;
  std::vector<std::pair<AssignmentSet, BoolPtr>> entries_;
  std::map<AssignmentSet, std::size_t> index_;
};

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

}  // namespace ltlplan
