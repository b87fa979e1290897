#include "ltlplan/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "ltlplan/errors.hpp"

namespace ltlplan {

namespace {

LtlPtr node(LtlKind kind, LtlPtr lhs = nullptr, LtlPtr rhs = nullptr) {
  auto f = std::make_shared<LtlFormula>();
  f->kind = kind;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

}  // namespace

LtlPtr LtlFormula::make_true() { return node(LtlKind::True); }

LtlPtr LtlFormula::make_prop(int index, std::string name) {
  auto f = std::make_shared<LtlFormula>();
  f->kind = LtlKind::Prop;
  f->prop = index;
  f->prop_name = std::move(name);
  return f;
}

LtlPtr LtlFormula::make_not(LtlPtr f) { return node(LtlKind::Not, std::move(f)); }
LtlPtr LtlFormula::make_and(LtlPtr a, LtlPtr b) {
  return node(LtlKind::And, std::move(a), std::move(b));
}
LtlPtr LtlFormula::make_or(LtlPtr a, LtlPtr b) {
  return node(LtlKind::Or, std::move(a), std::move(b));
}
LtlPtr LtlFormula::make_next(LtlPtr f) { return node(LtlKind::Next, std::move(f)); }
LtlPtr LtlFormula::make_until(LtlPtr a, LtlPtr b) {
  return node(LtlKind::Until, std::move(a), std::move(b));
}
LtlPtr LtlFormula::make_eventually(LtlPtr f) {
  return node(LtlKind::Eventually, std::move(f));
}
LtlPtr LtlFormula::make_always(LtlPtr f) {
  return node(LtlKind::Always, std::move(f));
}

bool structurally_equal(const LtlPtr& a, const LtlPtr& b) {
  return compare(a, b) == 0;
}

int compare(const LtlPtr& a, const LtlPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (a->kind == LtlKind::Prop) {
    if (a->prop != b->prop) return a->prop < b->prop ? -1 : 1;
    return 0;
  }
  if (a->lhs || b->lhs) {
    if (!a->lhs) return -1;
    if (!b->lhs) return 1;
    if (int c = compare(a->lhs, b->lhs)) return c;
  }
  if (a->rhs || b->rhs) {
    if (!a->rhs) return -1;
    if (!b->rhs) return 1;
    if (int c = compare(a->rhs, b->rhs)) return c;
  }
  return 0;
}

namespace {

// Precedence levels for printing: | < & < U < unary < atoms.
int prec(const LtlPtr& f) {
  switch (f->kind) {
    case LtlKind::Or:
      return 0;
    case LtlKind::And:
      return 1;
    case LtlKind::Until:
      return 2;
    case LtlKind::Not:
    case LtlKind::Next:
    case LtlKind::Eventually:
    case LtlKind::Always:
      return 3;
    default:
      return 4;
  }
}

std::string render(const LtlPtr& f, int min_prec) {
  std::string s;
  switch (f->kind) {
    case LtlKind::True:
      s = "true";
      break;
    case LtlKind::Prop:
      s = f->prop_name;
      break;
    case LtlKind::Not:
      s = "!" + render(f->lhs, 3);
      break;
    case LtlKind::Next:
      s = "X " + render(f->lhs, 3);
      break;
    case LtlKind::Eventually:
      s = "F " + render(f->lhs, 3);
      break;
    case LtlKind::Always:
      s = "G " + render(f->lhs, 3);
      break;
    case LtlKind::Until:
      s = render(f->lhs, 3) + " U " + render(f->rhs, 2);
      break;
    case LtlKind::And:
      s = render(f->lhs, 1) + " & " + render(f->rhs, 2);
      break;
    case LtlKind::Or:
      s = render(f->lhs, 0) + " | " + render(f->rhs, 1);
      break;
  }
  if (prec(f) < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string to_string(const LtlPtr& f) { return render(f, 0); }

namespace {

struct Parser {
  const std::string& text;
  const Alphabet& alphabet;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  // A lowercase identifier or the keyword `true`.
  bool peek_ident(std::string& out, std::size_t& start) {
    skip_ws();
    start = pos;
    if (pos >= text.size()) return false;
    char c = text[pos];
    if (!(std::islower(static_cast<unsigned char>(c)) || c == '_')) return false;
    std::size_t end = pos;
    while (end < text.size() &&
           (std::islower(static_cast<unsigned char>(text[end])) ||
            std::isdigit(static_cast<unsigned char>(text[end])) ||
            text[end] == '_')) {
      ++end;
    }
    out = text.substr(pos, end - pos);
    return true;
  }

  bool peek_op(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  LtlPtr parse_or() {
    LtlPtr lhs = parse_and();
    while (eat('|')) {
      lhs = LtlFormula::make_or(lhs, parse_and());
    }
    return lhs;
  }

  LtlPtr parse_and() {
    LtlPtr lhs = parse_until();
    while (eat('&')) {
      lhs = LtlFormula::make_and(lhs, parse_until());
    }
    return lhs;
  }

  LtlPtr parse_until() {
    LtlPtr lhs = parse_unary();
    skip_ws();
    if (pos < text.size() && text[pos] == 'U') {
      ++pos;
      return LtlFormula::make_until(lhs, parse_until());  // right-associative
    }
    return lhs;
  }

  LtlPtr parse_unary() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("unexpected end of input", pos);
    char c = text[pos];
    if (c == '!') {
      ++pos;
      return LtlFormula::make_not(parse_unary());
    }
    if (c == 'X') {
      ++pos;
      return LtlFormula::make_next(parse_unary());
    }
    if (c == 'F') {
      ++pos;
      return LtlFormula::make_eventually(parse_unary());
    }
    if (c == 'G') {
      ++pos;
      return LtlFormula::make_always(parse_unary());
    }
    return parse_atom();
  }

  LtlPtr parse_atom() {
    skip_ws();
    if (eat('(')) {
      LtlPtr inner = parse_or();
      if (!eat(')')) throw ParseError("expected ')'", pos);
      return inner;
    }
    std::string ident;
    std::size_t start;
    if (peek_ident(ident, start)) {
      pos = start + ident.size();
      if (ident == "true") return LtlFormula::make_true();
      int index = alphabet.index_of(ident);
      if (index < 0) throw UnknownPropositionError(ident, start);
      return LtlFormula::make_prop(index, ident);
    }
    throw ParseError(std::string("unexpected character '") +
                         (pos < text.size() ? std::string(1, text[pos]) : "EOF") + "'",
                     pos);
  }
};

}  // namespace

LtlPtr parse_ltl(const std::string& text, const Alphabet& alphabet) {
  Parser p{text, alphabet};
  LtlPtr f = p.parse_or();
  p.skip_ws();
  if (p.pos != text.size()) {
    throw ParseError("trailing input", p.pos);
  }
  return f;
}

LtlPtr ltl_false() {
  static const LtlPtr f = LtlFormula::make_not(LtlFormula::make_true());
  return f;
}

bool is_true(const LtlPtr& f) { return f->kind == LtlKind::True; }

bool is_false(const LtlPtr& f) {
  return f->kind == LtlKind::Not && f->lhs->kind == LtlKind::True;
}

namespace {

LtlPtr nnf(const LtlPtr& f, bool negated) {
  switch (f->kind) {
    case LtlKind::True:
      return negated ? ltl_false() : LtlFormula::make_true();
    case LtlKind::Prop:
      return negated ? LtlFormula::make_not(f) : f;
    case LtlKind::Not:
      return nnf(f->lhs, !negated);
    case LtlKind::And:
      if (negated) {
        return LtlFormula::make_or(nnf(f->lhs, true), nnf(f->rhs, true));
      }
      return LtlFormula::make_and(nnf(f->lhs, false), nnf(f->rhs, false));
    case LtlKind::Or:
      if (negated) {
        return LtlFormula::make_and(nnf(f->lhs, true), nnf(f->rhs, true));
      }
      return LtlFormula::make_or(nnf(f->lhs, false), nnf(f->rhs, false));
    case LtlKind::Next:
      return LtlFormula::make_next(nnf(f->lhs, negated));
    case LtlKind::Eventually:
      // F p == true U p; !F p == G !p
      if (negated) return LtlFormula::make_always(nnf(f->lhs, true));
      return LtlFormula::make_until(LtlFormula::make_true(), nnf(f->lhs, false));
    case LtlKind::Always:
      // !G p == F !p
      if (negated) {
        return LtlFormula::make_until(LtlFormula::make_true(), nnf(f->lhs, true));
      }
      return LtlFormula::make_always(nnf(f->lhs, false));
    case LtlKind::Until: {
      if (!negated) {
        return LtlFormula::make_until(nnf(f->lhs, false), nnf(f->rhs, false));
      }
      // !(p U q) == (!q U (!p & !q)) | G !q
      LtlPtr np = nnf(f->lhs, true);
      LtlPtr nq = nnf(f->rhs, true);
      return LtlFormula::make_or(
          LtlFormula::make_until(nq, LtlFormula::make_and(np, nq)),
          LtlFormula::make_always(nq));
    }
  }
  return f;  // unreachable
}

}  // namespace

LtlPtr normalize(const LtlPtr& f) { return nnf(f, false); }

void collect_props_impl(const LtlPtr& f, std::vector<int>& out) {
  if (f->kind == LtlKind::Prop) {
    out.push_back(f->prop);
    return;
  }
  if (f->lhs) collect_props_impl(f->lhs, out);
  if (f->rhs) collect_props_impl(f->rhs, out);
}

std::vector<int> collect_props(const LtlPtr& f) {
  std::vector<int> out;
  collect_props_impl(f, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Per-position truth vectors over the lasso graph, memoized per node.
struct LassoEval {
  const LassoWord& word;
  int n;
  std::unordered_map<const LtlFormula*, std::vector<char>> memo;

  explicit LassoEval(const LassoWord& w) : word(w), n(w.length()) {}

  const std::vector<char>& eval(const LtlPtr& f) {
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    std::vector<char> v(n, 0);
    switch (f->kind) {
      case LtlKind::True:
        v.assign(n, 1);
        break;
      case LtlKind::Prop:
        for (int i = 0; i < n; ++i) v[i] = word.at(i).contains(f->prop);
        break;
      case LtlKind::Not: {
        const auto& a = eval(f->lhs);
        for (int i = 0; i < n; ++i) v[i] = !a[i];
        break;
      }
      case LtlKind::And: {
        const auto& a = eval(f->lhs);
        const auto& b = eval(f->rhs);
        for (int i = 0; i < n; ++i) v[i] = a[i] && b[i];
        break;
      }
      case LtlKind::Or: {
        const auto& a = eval(f->lhs);
        const auto& b = eval(f->rhs);
        for (int i = 0; i < n; ++i) v[i] = a[i] || b[i];
        break;
      }
      case LtlKind::Next: {
        const auto& a = eval(f->lhs);
        for (int i = 0; i < n; ++i) v[i] = a[word.next(i)];
        break;
      }
      case LtlKind::Until: {
        // Least fixpoint: v[i] = q[i] | (p[i] & v[next(i)]).
        const auto& p = eval(f->lhs);
        const auto& q = eval(f->rhs);
        bool changed = true;
        while (changed) {
          changed = false;
          for (int i = n - 1; i >= 0; --i) {
            char nv = q[i] || (p[i] && v[word.next(i)]);
            if (nv != v[i]) {
              v[i] = nv;
              changed = true;
            }
          }
        }
        break;
      }
      case LtlKind::Eventually: {
        const auto& a = eval(f->lhs);
        bool changed = true;
        while (changed) {
          changed = false;
          for (int i = n - 1; i >= 0; --i) {
            char nv = a[i] || v[word.next(i)];
            if (nv != v[i]) {
              v[i] = nv;
              changed = true;
            }
          }
        }
        break;
      }
      case LtlKind::Always: {
        // Greatest fixpoint: start from all-true.
        const auto& a = eval(f->lhs);
        v.assign(n, 1);
        bool changed = true;
        while (changed) {
          changed = false;
          for (int i = n - 1; i >= 0; --i) {
            char nv = a[i] && v[word.next(i)];
            if (nv != v[i]) {
              v[i] = nv;
              changed = true;
            }
          }
        }
        break;
      }
    }
    return memo.emplace(f.get(), std::move(v)).first->second;
  }
};

}  // namespace

bool satisfies_lasso(const LassoWord& word, const LtlPtr& f) {
  LassoEval ev(word);
  return ev.eval(f)[0] != 0;
}

}  // namespace ltlplan
