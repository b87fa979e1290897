#include "ltlplan/formula_cache.hpp"

#include <algorithm>

namespace ltlplan {

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    out.push_back(comb);
    int i = k - 1;
    while (i >= 0 && comb[i] == n - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

namespace {

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  for (int x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  }
  return true;
}

}  // namespace

void FormulaCache::try_insert(const BoolPtr& formula) {
  AssignmentSet key = satisfying_set(formula, universe_);
  auto it = index_.find(key);
  if (it == index_.end()) {
    index_.emplace(std::move(key), entries_.size());
    entries_.emplace_back(satisfying_set(formula, universe_), formula);
    return;
  }
  // Lowest complexity wins; insertion order breaks ties.
  if (complexity(formula) < complexity(entries_[it->second].second)) {
    entries_[it->second].second = formula;
  }
}

FormulaCache::FormulaCache(Alphabet alphabet, AssignmentSet universe,
                           TemplateParams params)
    : alphabet_(std::move(alphabet)),
      universe_(std::move(universe)),
      params_(params) {
  normalize_set(universe_);
  const int n = alphabet_.size();

  auto var = [&](int i) { return BoolFormula::make_var(i, alphabet_.prop(i)); };
  auto disjunction = [&](const std::vector<int>& vs) {
    std::vector<BoolPtr> cs;
    for (int v : vs) cs.push_back(var(v));
    return BoolFormula::make_or(std::move(cs));
  };
  auto conjunction = [&](const std::vector<int>& vs) {
    std::vector<BoolPtr> cs;
    for (int v : vs) cs.push_back(var(v));
    return BoolFormula::make_and(std::move(cs));
  };

  // Empty set and full universe are seeded up front; templates whose
  // satisfying set is empty or full are thereby never inserted.
  try_insert(BoolFormula::make_false());
  try_insert(BoolFormula::make_true());

  // Or formulae, k = 1 .. |V|-1, each followed by its complement.
  for (int k = 1; k <= n - 1; ++k) {
    for (const auto& vs : k_subsets(n, k)) {
      BoolPtr f = disjunction(vs);
      try_insert(f);
      try_insert(BoolFormula::make_not(f));
    }
  }

  // And formulae, k = 1 .. |V|-1.
  for (int k = 1; k <= n - 1; ++k) {
    for (const auto& vs : k_subsets(n, k)) {
      BoolPtr f = conjunction(vs);
      try_insert(f);
      try_insert(BoolFormula::make_not(f));
    }
  }

  // Or-x-and-y: (v1|...) & (w1&...), disjoint variable sets.
  for (int i = 2; i <= std::min(params_.or_and_x, n - 1); ++i) {
    for (int j = 1; j <= std::min(params_.or_and_y, n - 1); ++j) {
      for (const auto& v1 : k_subsets(n, i)) {
        for (const auto& v2 : k_subsets(n, j)) {
          if (!disjoint(v1, v2)) continue;
          BoolPtr f = BoolFormula::make_and({disjunction(v1), conjunction(v2)});
          try_insert(f);
          try_insert(BoolFormula::make_not(f));
        }
      }
    }
  }

  // And-x-and-not-y: (v1&...) & !(w1|...); complement !(v1&...) | (w1|...).
  for (int i = 2; i <= std::min(params_.and_not_x, n - 1); ++i) {
    for (int j = 1; j <= std::min(params_.and_not_y, n - 1); ++j) {
      for (const auto& v1 : k_subsets(n, i)) {
        for (const auto& v2 : k_subsets(n, j)) {
          if (!disjoint(v1, v2)) continue;
          BoolPtr pos = conjunction(v1);
          BoolPtr neg = disjunction(v2);
          try_insert(BoolFormula::make_and({pos, BoolFormula::make_not(neg)}));
          try_insert(BoolFormula::make_or({BoolFormula::make_not(pos), neg}));
        }
      }
    }
  }

  // Or-x-and-not-y: (v1|...) & !(w1|...); complement !(v1|...) | (w1|...).
  for (int i = 1; i <= std::min(params_.or_not_x, n - 1); ++i) {
    for (int j = 1; j <= std::min(params_.or_not_y, n - 1); ++j) {
      for (const auto& v1 : k_subsets(n, i)) {
        for (const auto& v2 : k_subsets(n, j)) {
          if (!disjoint(v1, v2)) continue;
          BoolPtr pos = disjunction(v1);
          BoolPtr neg = disjunction(v2);
          try_insert(BoolFormula::make_and({pos, BoolFormula::make_not(neg)}));
          try_insert(BoolFormula::make_or({BoolFormula::make_not(pos), neg}));
        }
      }
    }
  }

  // Or-x-and-not-zy: (v1|...) & ![ (w11&..wj1) | ... k conjunctions of size j ].
  for (int i = 1; i <= std::min(params_.or_notz_x, n - 1); ++i) {
    for (int j = 2; j <= std::min(params_.or_notz_y, n - 1); ++j) {
      auto groups = k_subsets(n, j);
      for (int k = 1; k <= params_.or_notz_z; ++k) {
        auto picks = k_subsets(static_cast<int>(groups.size()), k);
        for (const auto& v1 : k_subsets(n, i)) {
          BoolPtr pos = disjunction(v1);
          for (const auto& pick : picks) {
            std::vector<BoolPtr> terms;
            for (int g : pick) terms.push_back(conjunction(groups[g]));
            BoolPtr neg = BoolFormula::make_or(std::move(terms));
            try_insert(
                BoolFormula::make_and({pos, BoolFormula::make_not(neg)}));
            try_insert(BoolFormula::make_or({BoolFormula::make_not(pos), neg}));
          }
        }
      }
    }
  }
}

BoolPtr FormulaCache::lookup(const AssignmentSet& set) const {
  AssignmentSet key = set;
  normalize_set(key);
  auto it = index_.find(key);
  if (it != index_.end()) return entries_[it->second].second;
  return dnf_of(key, alphabet_);
}

std::optional<BoolPtr> FormulaCache::cached(const AssignmentSet& set) const {
  AssignmentSet key = set;
  normalize_set(key);
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].second;
}

}  // namespace ltlplan
