#include "entadd/quantity.hpp"

#include "entadd/error.hpp"

#include <cctype>
#include <cmath>

namespace entadd {

namespace mp = boost::multiprecision;

double Coefficient::value() const {
  double v = static_cast<double>(rational);
  if (log_arg) v *= log_of(*log_arg);
  return v;
}

std::string Coefficient::to_string() const {
  std::string r = rational.str();  // "p" or "p/q"
  if (!log_arg) return r;
  const std::string l = "log(" + log_arg->str() + ")";
  return rational == 1 ? l : r + "*" + l;
}

namespace {

struct FunctionalName {
  const char* name;
  Atom::Kind kind;
  bool lowercase;
};

constexpr FunctionalName kBracketFunctionals[] = {
    {"H", Atom::Kind::Entropy, false},          {"h", Atom::Kind::Entropy, true},
    {"Ht", Atom::Kind::MultEntropy, false},     {"ht", Atom::Kind::MultEntropy, true},
    {"I", Atom::Kind::Mutual, false},           {"ElogAbs", Atom::Kind::ElogAbs, false},
    {"Coll", Atom::Kind::Coll, false},          {"Pmin", Atom::Kind::Pmin, false},
    {"Pmax", Atom::Kind::Pmax, false},          {"SidonRetained", Atom::Kind::SidonRetained, false},
};

class QuantityParser {
 public:
  explicit QuantityParser(std::string_view text) : text_(text) {}

  QuantityPtr parse_all() {
    auto q = quantity();
    skip();
    if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return q;
  }

 private:
  QuantityPtr quantity() {
    auto q = std::make_shared<Quantity>();
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    q->terms.push_back(term(negative));
    for (;;) {
      skip();
      if (peek() != '+' && peek() != '-') break;
      negative = peek() == '-';
      ++pos_;
      q->terms.push_back(term(negative));
    }
    return q;
  }

  Term term(bool negative) {
    Term t;
    bool saw_factor = false;
    for (;;) {
      skip();
      const std::size_t at = pos_;
      const char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        t.coef.rational *= number();
      } else if (is_identifier_start(c)) {
        const std::string name = identifier();
        skip();
        if (name == "log" && peek() == '(') {
          ++pos_;
          skip();
          if (!std::isdigit(static_cast<unsigned char>(peek()))) throw SyntaxError(pos_, "log() needs a positive integer");
          const std::size_t s = pos_;
          while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
          BigInt n(std::string(text_.substr(s, pos_ - s)));
          if (n < 1) throw SyntaxError(s, "log() needs a positive integer");
          expect(')');
          if (t.coef.log_arg) throw SyntaxError(at, "at most one log() factor per coefficient");
          t.coef.log_arg = n;
        } else {
          if (t.atom) throw SyntaxError(at, "a term may contain only one functional");
          t.atom = atom(name, at);
        }
      } else if (!saw_factor) {
        if (c == '\0') throw SyntaxError(pos_, "unexpected end of input, expected a term");
        throw SyntaxError(pos_, std::string("unexpected '") + c + "', expected a term");
      } else {
        throw SyntaxError(pos_, "expected a factor after '*'");
      }
      saw_factor = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (negative) t.coef.rational = -t.coef.rational;
    return t;
  }

  Rational number() {
    const std::size_t s = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string digits(text_.substr(s, pos_ - s));
    BigInt den = 1;
    if (peek() == '.') {
      ++pos_;
      const std::size_t f = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      const std::string frac(text_.substr(f, pos_ - f));
      if (digits.empty() && frac.empty()) throw SyntaxError(s, "malformed number");
      digits += frac;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    }
    if (digits.empty()) throw SyntaxError(s, "malformed number");
    Rational r(BigInt(digits), den);
    skip();
    if (peek() == '/') {
      ++pos_;
      skip();
      const std::size_t d = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d == pos_) throw SyntaxError(pos_, "expected a denominator");
      BigInt q(std::string(text_.substr(d, pos_ - d)));
      if (q == 0) throw SyntaxError(d, "zero denominator");
      r /= q;
    }
    return r;
  }

  std::shared_ptr<const Atom> atom(const std::string& name, std::size_t at) {
    auto a = std::make_shared<Atom>();
    if (peek() == '[') {
      const FunctionalName* f = nullptr;
      for (const auto& cand : kBracketFunctionals) {
        if (name == cand.name) f = &cand;
      }
      if (!f) throw Error(ErrorKind::UnknownFunctional, "unknown functional '" + name + "' at offset " + std::to_string(at));
      ++pos_;
      a->kind = f->kind;
      a->lowercase = f->lowercase;
      switch (a->kind) {
        case Atom::Kind::Entropy:
        case Atom::Kind::MultEntropy:
          a->args = rv_list();
          if (peek() == '|') {
            ++pos_;
            a->cond = rv_list();
          }
          break;
        case Atom::Kind::Mutual:
          a->args = rv_list();
          expect(';');
          a->args2 = rv_list();
          if (peek() == '|') {
            ++pos_;
            a->cond = rv_list();
          }
          break;
        default:
          a->args.push_back(parse_rv_expr(text_, pos_));
          skip();
          break;
      }
      expect(']');
      return a;
    }
    if (peek() == '(') {
      if (name == "max" || name == "min") {
        a->kind = name == "max" ? Atom::Kind::Max : Atom::Kind::Min;
      } else if (name == "abs") {
        a->kind = Atom::Kind::Abs;
      } else if (name == "ratio") {
        a->kind = Atom::Kind::Ratio;
      } else {
        throw Error(ErrorKind::UnknownFunctional, "unknown function '" + name + "' at offset " + std::to_string(at));
      }
      ++pos_;
      a->operands.push_back(quantity());
      skip();
      while (peek() == ',') {
        ++pos_;
        a->operands.push_back(quantity());
        skip();
      }
      const std::size_t close = pos_;
      expect(')');
      const std::size_t n = a->operands.size();
      if ((a->kind == Atom::Kind::Abs && n != 1) || (a->kind == Atom::Kind::Ratio && n != 2) ||
          ((a->kind == Atom::Kind::Max || a->kind == Atom::Kind::Min) && n < 2)) {
        throw SyntaxError(close, "wrong number of arguments to " + name + "()");
      }
      return a;
    }
    a->kind = Atom::Kind::LetRef;
    a->name = name;
    return a;
  }

  std::vector<RvExprPtr> rv_list() {
    std::vector<RvExprPtr> out;
    out.push_back(parse_rv_expr(text_, pos_));
    skip();
    while (peek() == ',') {
      ++pos_;
      out.push_back(parse_rv_expr(text_, pos_));
      skip();
    }
    return out;
  }

  std::string identifier() {
    const std::size_t s = pos_;
    while (is_identifier_char(peek())) ++pos_;
    return std::string(text_.substr(s, pos_ - s));
  }

  void expect(char c) {
    skip();
    if (peek() != c) {
      if (peek() == '\0') throw SyntaxError(pos_, std::string("unexpected end of input, expected '") + c + "'");
      throw SyntaxError(pos_, std::string("expected '") + c + "', found '" + peek() + "'");
    }
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<RvExprPtr>& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) out += (i ? "," : "") + to_string(*list[i]);
  return out;
}

const char* bracket_name(const Atom& a) {
  for (const auto& f : kBracketFunctionals) {
    if (f.kind == a.kind && f.lowercase == a.lowercase) return f.name;
  }
  return "?";
}

bool lists_equal(const std::vector<RvExprPtr>& a, const std::vector<RvExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!structurally_equal(*a[i], *b[i])) return false;
  }
  return true;
}

bool atoms_equal(const Atom& a, const Atom& b) {
  if (a.kind != b.kind || a.lowercase != b.lowercase || a.name != b.name) return false;
  if (!lists_equal(a.args, b.args) || !lists_equal(a.args2, b.args2) || !lists_equal(a.cond, b.cond)) return false;
  if (a.operands.size() != b.operands.size()) return false;
  for (std::size_t i = 0; i < a.operands.size(); ++i) {
    if (!structurally_equal(*a.operands[i], *b.operands[i])) return false;
  }
  return true;
}

void collect_atom(const Atom& a, std::set<std::string>* rvs, std::set<std::string>* lets) {
  if (a.kind == Atom::Kind::LetRef) {
    if (lets) lets->insert(a.name);
    return;
  }
  if (rvs) {
    for (const auto* list : {&a.args, &a.args2, &a.cond}) {
      for (const auto& e : *list) collect_identifiers(*e, *rvs);
    }
  }
  for (const auto& q : a.operands) {
    for (const auto& t : q->terms) {
      if (t.atom) collect_atom(*t.atom, rvs, lets);
    }
  }
}

}  // namespace

QuantityPtr parse_quantity(std::string_view text) { return QuantityParser(text).parse_all(); }

std::vector<RvExprPtr> parse_rv_list(std::string_view text) {
  std::vector<RvExprPtr> out;
  std::size_t pos = 0;
  for (;;) {
    out.push_back(parse_rv_expr(text, pos));
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == text.size()) return out;
    if (text[pos] != ',') throw SyntaxError(pos, "expected ','");
    ++pos;
  }
}

std::string to_string(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::Entropy:
    case Atom::Kind::MultEntropy: {
      std::string out = std::string(bracket_name(a)) + "[" + join(a.args);
      if (!a.cond.empty()) out += "|" + join(a.cond);
      return out + "]";
    }
    case Atom::Kind::Mutual: {
      std::string out = "I[" + join(a.args) + ";" + join(a.args2);
      if (!a.cond.empty()) out += "|" + join(a.cond);
      return out + "]";
    }
    case Atom::Kind::ElogAbs:
    case Atom::Kind::Coll:
    case Atom::Kind::Pmin:
    case Atom::Kind::Pmax:
    case Atom::Kind::SidonRetained: return std::string(bracket_name(a)) + "[" + to_string(*a.args[0]) + "]";
    case Atom::Kind::Max:
    case Atom::Kind::Min:
    case Atom::Kind::Abs:
    case Atom::Kind::Ratio: {
      const char* name = a.kind == Atom::Kind::Max   ? "max"
                         : a.kind == Atom::Kind::Min ? "min"
                         : a.kind == Atom::Kind::Abs ? "abs"
                                                     : "ratio";
      std::string out = std::string(name) + "(";
      for (std::size_t i = 0; i < a.operands.size(); ++i) out += (i ? "," : "") + to_string(*a.operands[i]);
      return out + ")";
    }
    case Atom::Kind::LetRef: return a.name;
  }
  return "?";
}

std::string to_string(const Quantity& q) {
  std::string out;
  for (std::size_t i = 0; i < q.terms.size(); ++i) {
    const Term& t = q.terms[i];
    Coefficient c = t.coef;
    const bool negative = c.rational < 0;
    if (negative) c.rational = -c.rational;
    if (i == 0) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (!t.atom) {
      out += c.to_string();
    } else if (c.is_one()) {
      out += to_string(*t.atom);
    } else {
      out += c.to_string() + "*" + to_string(*t.atom);
    }
  }
  return out;
}

bool structurally_equal(const Quantity& a, const Quantity& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    const auto& x = a.terms[i];
    const auto& y = b.terms[i];
    if (!(x.coef == y.coef) || static_cast<bool>(x.atom) != static_cast<bool>(y.atom)) return false;
    if (x.atom && !atoms_equal(*x.atom, *y.atom)) return false;
  }
  return true;
}

void collect_identifiers(const Quantity& q, std::set<std::string>& rvs) {
  for (const auto& t : q.terms) {
    if (t.atom) collect_atom(*t.atom, &rvs, nullptr);
  }
}

void collect_let_refs(const Quantity& q, std::set<std::string>& lets) {
  for (const auto& t : q.terms) {
    if (t.atom) collect_atom(*t.atom, nullptr, &lets);
  }
}

}  // namespace entadd
