#pragma once

#include "entadd/group_value.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace entadd {

// Arithmetic expression over random-variable identifiers:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | '(' expr ')' | integer | identifier
// Identifiers are [A-Za-z_][A-Za-z0-9_]* optionally followed by primes (X').
struct RvExpr {
  enum class Kind { Var, Literal, Neg, Binary };

  Kind kind = Kind::Var;
  std::string name;  // Var
  BigInt literal;    // Literal (non-negative; negation is a Neg node)
  BinaryOp op = BinaryOp::Add;
  std::shared_ptr<const RvExpr> lhs;  // Neg operand / Binary lhs
  std::shared_ptr<const RvExpr> rhs;
};

using RvExprPtr = std::shared_ptr<const RvExpr>;

RvExprPtr make_var(std::string name);
RvExprPtr make_literal(BigInt value);
RvExprPtr make_neg(RvExprPtr operand);
RvExprPtr make_binary(BinaryOp op, RvExprPtr lhs, RvExprPtr rhs);

// Parses a full expression; trailing garbage is a SyntaxError.
RvExprPtr parse_rv_expr(std::string_view text);
// Parses the longest expression starting at `pos` (after whitespace) and
// advances `pos`. Offsets in errors are relative to `text`.
RvExprPtr parse_rv_expr(std::string_view text, std::size_t& pos);

bool is_identifier_start(char c);
bool is_identifier_char(char c);

// Canonical text with minimal parentheses; parse(print(e)) is structurally e.
std::string to_string(const RvExpr& e);
bool structurally_equal(const RvExpr& a, const RvExpr& b);

void collect_identifiers(const RvExpr& e, std::set<std::string>& out);
bool uses_operator(const RvExpr& e, BinaryOp op);

// Expression compiled against a slot layout, evaluated per support tuple.
// Integer literals adopt the group of the sibling operand.
class CompiledRv {
 public:
  CompiledRv(const RvExpr& e, const std::unordered_map<std::string, std::size_t>& slots);

  GroupValue operator()(const GroupValue* slots) const;

 private:
  struct Instr {
    enum class Code : std::uint8_t { Var, Lit, Neg, Bin } code;
    BinaryOp op;
    std::size_t slot;
    BigInt literal;
  };
  std::vector<Instr> program_;
};

GroupValue evaluate(const RvExpr& e, const std::function<GroupValue(const std::string&)>& lookup);

}  // namespace entadd
