#include "entadd/rv_expr.hpp"

#include "entadd/error.hpp"

#include <cctype>

namespace entadd {

RvExprPtr make_var(std::string name) {
  auto e = std::make_shared<RvExpr>();
  e->kind = RvExpr::Kind::Var;
  e->name = std::move(name);
  return e;
}

RvExprPtr make_literal(BigInt value) {
  auto e = std::make_shared<RvExpr>();
  e->kind = RvExpr::Kind::Literal;
  e->literal = std::move(value);
  return e;
}

RvExprPtr make_neg(RvExprPtr operand) {
  auto e = std::make_shared<RvExpr>();
  e->kind = RvExpr::Kind::Neg;
  e->lhs = std::move(operand);
  return e;
}

RvExprPtr make_binary(BinaryOp op, RvExprPtr lhs, RvExprPtr rhs) {
  auto e = std::make_shared<RvExpr>();
  e->kind = RvExpr::Kind::Binary;
  e->op = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

bool is_identifier_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

namespace {

class RvParser {
 public:
  RvParser(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  RvExprPtr expr() {
    auto lhs = term();
    for (;;) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        const BinaryOp op = peek() == '+' ? BinaryOp::Add : BinaryOp::Sub;
        ++pos_;
        lhs = make_binary(op, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  std::size_t pos() const { return pos_; }

 private:
  RvExprPtr term() {
    auto lhs = unary();
    for (;;) {
      skip_ws();
      if (peek() == '*' || peek() == '/') {
        const BinaryOp op = peek() == '*' ? BinaryOp::Mul : BinaryOp::Div;
        ++pos_;
        lhs = make_binary(op, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  RvExprPtr unary() {
    skip_ws();
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return make_neg(unary());
    }
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      skip_ws();
      if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return make_literal(BigInt(std::string(text_.substr(start, pos_ - start))));
    }
    if (is_identifier_start(c)) {
      const std::size_t start = pos_;
      while (is_identifier_char(peek())) ++pos_;
      while (peek() == '\'') ++pos_;
      return make_var(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == '\0') throw SyntaxError(pos_, "unexpected end of input, expected a random variable");
    throw SyntaxError(pos_, std::string("unexpected '") + c + "' in random-variable expression");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_;
};

int precedence(const RvExpr& e) {
  switch (e.kind) {
    case RvExpr::Kind::Binary:
      return (e.op == BinaryOp::Add || e.op == BinaryOp::Sub) ? 1 : 2;
    case RvExpr::Kind::Neg: return 3;
    default: return 4;
  }
}

void print(const RvExpr& e, std::string& out) {
  switch (e.kind) {
    case RvExpr::Kind::Var: out += e.name; return;
    case RvExpr::Kind::Literal: out += e.literal.str(); return;
    case RvExpr::Kind::Neg: {
      out += '-';
      const bool paren = precedence(*e.lhs) < 3;
      if (paren) out += '(';
      print(*e.lhs, out);
      if (paren) out += ')';
      return;
    }
    case RvExpr::Kind::Binary: {
      const int p = precedence(e);
      const bool lp = precedence(*e.lhs) < p;
      const bool rp = precedence(*e.rhs) <= p;
      if (lp) out += '(';
      print(*e.lhs, out);
      if (lp) out += ')';
      out += to_string(e.op);
      if (rp) out += '(';
      print(*e.rhs, out);
      if (rp) out += ')';
      return;
    }
  }
}

struct EvalValue {
  GroupValue v;
  bool literal;
};

GroupValue coerce(const EvalValue& x, const GroupValue& like) {
  if (!x.literal) return x.v;
  if (x.v.kind() == GroupValue::Kind::Int) return coerce_literal(x.v.as_integer(), like);
  if (like.is_numeric()) return x.v;
  if (like.kind() == GroupValue::Kind::IntMod) {
    const Rational q = x.v.as_rational();
    return coerce_literal(boost::multiprecision::numerator(q), like) /
           coerce_literal(boost::multiprecision::denominator(q), like);
  }
  throw Error(ErrorKind::MixedGroup, "literal " + x.v.to_string() + " has no meaning in Z^d");
}

EvalValue combine_values(BinaryOp op, const EvalValue& a, const EvalValue& b) {
  if (a.literal && b.literal) return {apply(op, a.v, b.v), true};
  if (a.literal) return {apply(op, coerce(a, b.v), b.v), false};
  if (b.literal) return {apply(op, a.v, coerce(b, a.v)), false};
  return {apply(op, a.v, b.v), false};
}

EvalValue eval_rec(const RvExpr& e, const std::function<GroupValue(const std::string&)>& lookup) {
  switch (e.kind) {
    case RvExpr::Kind::Var: return {lookup(e.name), false};
    case RvExpr::Kind::Literal: return {GroupValue::integer(e.literal), true};
    case RvExpr::Kind::Neg: {
      auto x = eval_rec(*e.lhs, lookup);
      return {negate(x.v), x.literal};
    }
    case RvExpr::Kind::Binary:
      return combine_values(e.op, eval_rec(*e.lhs, lookup), eval_rec(*e.rhs, lookup));
  }
  return {};
}

}  // namespace

RvExprPtr parse_rv_expr(std::string_view text, std::size_t& pos) {
  RvParser p(text, pos);
  auto e = p.expr();
  pos = p.pos();
  return e;
}

RvExprPtr parse_rv_expr(std::string_view text) {
  std::size_t pos = 0;
  auto e = parse_rv_expr(text, pos);
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw SyntaxError(pos, "unexpected trailing input");
  return e;
}

std::string to_string(const RvExpr& e) {
  std::string out;
  print(e, out);
  return out;
}

bool structurally_equal(const RvExpr& a, const RvExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case RvExpr::Kind::Var: return a.name == b.name;
    case RvExpr::Kind::Literal: return a.literal == b.literal;
    case RvExpr::Kind::Neg: return structurally_equal(*a.lhs, *b.lhs);
    case RvExpr::Kind::Binary:
      return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
  return false;
}

void collect_identifiers(const RvExpr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case RvExpr::Kind::Var: out.insert(e.name); break;
    case RvExpr::Kind::Literal: break;
    case RvExpr::Kind::Neg: collect_identifiers(*e.lhs, out); break;
    case RvExpr::Kind::Binary:
      collect_identifiers(*e.lhs, out);
      collect_identifiers(*e.rhs, out);
      break;
  }
}

bool uses_operator(const RvExpr& e, BinaryOp op) {
  switch (e.kind) {
    case RvExpr::Kind::Neg: return uses_operator(*e.lhs, op);
    case RvExpr::Kind::Binary: return e.op == op || uses_operator(*e.lhs, op) || uses_operator(*e.rhs, op);
    default: return false;
  }
}

GroupValue evaluate(const RvExpr& e, const std::function<GroupValue(const std::string&)>& lookup) {
  auto r = eval_rec(e, lookup);
  return r.v;
}

CompiledRv::CompiledRv(const RvExpr& e, const std::unordered_map<std::string, std::size_t>& slots) {
  std::function<void(const RvExpr&)> emit = [&](const RvExpr& n) {
    switch (n.kind) {
      case RvExpr::Kind::Var: {
        auto it = slots.find(n.name);
        if (it == slots.end()) throw Error(ErrorKind::UnknownCoordinate, "unknown variable '" + n.name + "'");
        program_.push_back({Instr::Code::Var, BinaryOp::Add, it->second, {}});
        break;
      }
      case RvExpr::Kind::Literal: program_.push_back({Instr::Code::Lit, BinaryOp::Add, 0, n.literal}); break;
      case RvExpr::Kind::Neg:
        emit(*n.lhs);
        program_.push_back({Instr::Code::Neg, BinaryOp::Add, 0, {}});
        break;
      case RvExpr::Kind::Binary:
        emit(*n.lhs);
        emit(*n.rhs);
        program_.push_back({Instr::Code::Bin, n.op, 0, {}});
        break;
    }
  };
  emit(e);
}

GroupValue CompiledRv::operator()(const GroupValue* slots) const {
  // Fast path: a bare variable.
  if (program_.size() == 1 && program_[0].code == Instr::Code::Var) return slots[program_[0].slot];
  std::vector<EvalValue> stack;
  stack.reserve(program_.size());
  for (const auto& in : program_) {
    switch (in.code) {
      case Instr::Code::Var: stack.push_back({slots[in.slot], false}); break;
      case Instr::Code::Lit: stack.push_back({GroupValue::integer(in.literal), true}); break;
      case Instr::Code::Neg: stack.back().v = negate(stack.back().v); break;
      case Instr::Code::Bin: {
        EvalValue b = std::move(stack.back());
        stack.pop_back();
        stack.back() = combine_values(in.op, stack.back(), b);
        break;
      }
    }
  }
  return stack.back().v;
}

}  // namespace entadd
