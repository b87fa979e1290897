// Seeded random formula / lasso generators shared by the property and
// acceptance tests.
#pragma once

#include <random>
#include <vector>

#include "ltlplan/ltl.hpp"

namespace testgen {

using namespace ltlplan;

// Random propositional formula (literals, !, &, |) of the given depth.
inline LtlPtr random_prop(const Alphabet& ab, int depth,
                          std::mt19937_64& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth <= 0 || pick(3) == 0) {
    int p = pick(ab.size());
    LtlPtr lit = LtlFormula::make_prop(p, ab.prop(p));
    return pick(2) ? LtlFormula::make_not(lit) : lit;
  }
  switch (pick(3)) {
    case 0:
      return LtlFormula::make_and(random_prop(ab, depth - 1, rng),
                                  random_prop(ab, depth - 1, rng));
    case 1:
      return LtlFormula::make_or(random_prop(ab, depth - 1, rng),
                                 random_prop(ab, depth - 1, rng));
    default:
      return LtlFormula::make_not(random_prop(ab, depth - 1, rng));
  }
}

// Random formula of the supported fragment: arbitrary boolean/U/F/X
// structure, Always only over propositional arguments or an Eventually of
// one.
inline LtlPtr random_fragment(const Alphabet& ab, int depth,
                              std::mt19937_64& rng) {
  auto pick = [&](int n) { return static_cast<int>(rng() % n); };
  if (depth <= 0) return random_prop(ab, 1, rng);
  switch (pick(8)) {
    case 0:
      return random_prop(ab, depth, rng);
    case 1:
      return LtlFormula::make_and(random_fragment(ab, depth - 1, rng),
                                  random_fragment(ab, depth - 1, rng));
    case 2:
      return LtlFormula::make_or(random_fragment(ab, depth - 1, rng),
                                 random_fragment(ab, depth - 1, rng));
    case 3:
      return LtlFormula::make_next(random_fragment(ab, depth - 1, rng));
    case 4:
      return LtlFormula::make_until(random_fragment(ab, depth - 1, rng),
                                    random_fragment(ab, depth - 1, rng));
    case 5:
      return LtlFormula::make_eventually(random_fragment(ab, depth - 1, rng));
    case 6:
      return LtlFormula::make_always(random_prop(ab, depth - 1, rng));
    default:
      return LtlFormula::make_always(
          LtlFormula::make_eventually(random_prop(ab, depth - 1, rng)));
  }
}

// Every lasso word with prefix length <= max_prefix and cycle length in
// [1, max_cycle] over the full assignment alphabet.
inline std::vector<LassoWord> all_lassos(const Alphabet& ab, int max_prefix,
                                         int max_cycle) {
  const std::uint32_t n = ab.num_assignments();
  std::vector<std::vector<Assignment>> words_by_len[2];
  auto enumerate = [&](int len) {
    std::vector<std::vector<Assignment>> out;
    std::vector<std::uint32_t> idx(len, 0);
    if (len == 0) {
      out.push_back({});
      return out;
    }
    while (true) {
      std::vector<Assignment> w(len);
      for (int i = 0; i < len; ++i) w[i] = Assignment{idx[i]};
      out.push_back(std::move(w));
      int i = len - 1;
      while (i >= 0 && ++idx[i] == n) idx[i--] = 0;
      if (i < 0) break;
    }
    return out;
  };
  std::vector<LassoWord> lassos;
  for (int p = 0; p <= max_prefix; ++p) {
    auto prefixes = enumerate(p);
    for (int c = 1; c <= max_cycle; ++c) {
      auto cycles = enumerate(c);
      for (const auto& pre : prefixes) {
        for (const auto& cyc : cycles) {
          lassos.push_back(LassoWord{pre, cyc});
        }
      }
    }
  }
  return lassos;
}

}  // namespace testgen
