#include "ltlplan/bool_formula.hpp"

namespace ltlplan {

namespace {

BoolPtr leaf(BoolKind kind) {
  auto f = std::make_shared<BoolFormula>();
  f->kind = kind;
  return f;
}

}  // namespace

BoolPtr BoolFormula::make_true() { return leaf(BoolKind::True); }
BoolPtr BoolFormula::make_false() { return leaf(BoolKind::False); }

BoolPtr BoolFormula::make_var(int index, std::string name) {
  auto f = std::make_shared<BoolFormula>();
  f->kind = BoolKind::Var;
  f->var = index;
  f->var_name = std::move(name);
  return f;
}

BoolPtr BoolFormula::make_not(BoolPtr child) {
  auto f = std::make_shared<BoolFormula>();
  f->kind = BoolKind::Not;
  f->child = std::move(child);
  return f;
}

BoolPtr BoolFormula::make_and(std::vector<BoolPtr> children) {
  if (children.size() == 1) return children.front();
  auto f = std::make_shared<BoolFormula>();
  f->kind = BoolKind::And;
  f->children = std::move(children);
  return f;
}

BoolPtr BoolFormula::make_or(std::vector<BoolPtr> children) {
  if (children.size() == 1) return children.front();
  auto f = std::make_shared<BoolFormula>();
  f->kind = BoolKind::Or;
  f->children = std::move(children);
  return f;
}

bool evaluate(const BoolPtr& f, Assignment a) {
  switch (f->kind) {
    case BoolKind::True:
      return true;
    case BoolKind::False:
      return false;
    case BoolKind::Var:
      return a.contains(f->var);
    case BoolKind::Not:
      return !evaluate(f->child, a);
    case BoolKind::And:
      for (const auto& c : f->children) {
        if (!evaluate(c, a)) return false;
      }
      return true;
    case BoolKind::Or:
      for (const auto& c : f->children) {
        if (evaluate(c, a)) return true;
      }
      return false;
  }
  return false;
}

AssignmentSet satisfying_set(const BoolPtr& f, const AssignmentSet& universe) {
  AssignmentSet out;
  for (Assignment a : universe) {
    if (evaluate(f, a)) out.push_back(a);
  }
  return out;
}

int complexity(const BoolPtr& f) {
  switch (f->kind) {
    case BoolKind::True:
    case BoolKind::False:
    case BoolKind::Var:
      return 0;
    case BoolKind::Not:
      return 1 + complexity(f->child);
    case BoolKind::And:
    case BoolKind::Or: {
      int ops = static_cast<int>(f->children.size()) - 1;
      for (const auto& c : f->children) ops += complexity(c);
      return ops;
    }
  }
  return 0;
}

namespace {

int prec(const BoolPtr& f) {
  switch (f->kind) {
    case BoolKind::Or:
      return 0;
    case BoolKind::And:
      return 1;
    case BoolKind::Not:
      return 2;
    default:
      return 3;
  }
}

std::string render(const BoolPtr& f, int min_prec) {
  std::string s;
  switch (f->kind) {
    case BoolKind::True:
      s = "true";
      break;
    case BoolKind::False:
      s = "false";
      break;
    case BoolKind::Var:
      s = f->var_name;
      break;
    case BoolKind::Not:
      s = "!" + render(f->child, 2);
      break;
    case BoolKind::And: {
      bool first = true;
      for (const auto& c : f->children) {
        if (!first) s += " & ";
        s += render(c, 2);
        first = false;
      }
      break;
    }
    case BoolKind::Or: {
      bool first = true;
      for (const auto& c : f->children) {
        if (!first) s += " | ";
        s += render(c, 1);
        first = false;
      }
      break;
    }
  }
  if (prec(f) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string to_string(const BoolPtr& f) { return render(f, 0); }

BoolPtr dnf_of(const AssignmentSet& set, const Alphabet& alphabet) {
  if (set.empty()) return BoolFormula::make_false();
  std::vector<BoolPtr> terms;
  for (Assignment a : set) {  // AssignmentSet is sorted, so term order is fixed
    std::vector<BoolPtr> lits;
    for (int i = 0; i < alphabet.size(); ++i) {
      BoolPtr v = BoolFormula::make_var(i, alphabet.prop(i));
      lits.push_back(a.contains(i) ? v : BoolFormula::make_not(v));
    }
    if (lits.empty()) {
      terms.push_back(BoolFormula::make_true());
    } else {
      terms.push_back(BoolFormula::make_and(std::move(lits)));
    }
  }
  return BoolFormula::make_or(std::move(terms));
}

}  // namespace ltlplan
