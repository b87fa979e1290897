#include "ltlplan/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltlplan {

Alphabet::Alphabet(std::vector<std::string> props) : props_(std::move(props)) {
  if (props_.size() > 20) {
    throw std::invalid_argument("alphabet too large (max 20 propositions)");
  }
}

int Alphabet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < props_.size(); ++i) {
    if (props_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

AssignmentSet Alphabet::all_assignments() const {
  AssignmentSet out;
  out.reserve(num_assignments());
  for (std::uint32_t bits = 0; bits < num_assignments(); ++bits) {
    out.push_back(Assignment{bits});
  }
  return out;
}

std::string Alphabet::to_string(Assignment a) const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < size(); ++i) {
    if (!a.contains(i)) continue;
    if (!first) out += ", ";
    out += props_[i];
    first = false;
  }
  out += "}";
  return out;
}

void normalize_set(AssignmentSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

AssignmentSet complement_set(const AssignmentSet& set,
                             const AssignmentSet& universe) {
  AssignmentSet out;
  std::set_difference(universe.begin(), universe.end(), set.begin(), set.end(),
                      std::back_inserter(out));
  return out;
}

bool set_contains(const AssignmentSet& set, Assignment a) {
  return std::binary_search(set.begin(), set.end(), a);
}

LassoWord LassoWord::unrolled_once() const {
  LassoWord out;
  out.prefix = prefix;
  out.prefix.insert(out.prefix.end(), cycle.begin(), cycle.end());
  out.cycle = cycle;
  return out;
}

}  // namespace ltlplan
