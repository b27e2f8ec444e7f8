#pragma once

#include "entadd/group_value.hpp"
#include "entadd/rv_expr.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace entadd {

// Coefficient r * log(n) (log part optional); decimals and p/q normalise to r.
struct Coefficient {
  Rational rational = 1;
  std::optional<BigInt> log_arg;

  double value() const;
  bool is_one() const { return rational == 1 && !log_arg; }
  std::string to_string() const;

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

struct Quantity;
using QuantityPtr = std::shared_ptr<const Quantity>;

// A functional atom or a composite (max/min/abs/ratio) inside a quantity.
struct Atom {
  enum class Kind {
    Entropy,        // H[A] / H[A | B], h[...] spelled lowercase
    MultEntropy,    // Ht[...] / ht[...]: h - E log|.| in the continuous case
    Mutual,         // I[A ; B] / I[A ; B | C]
    ElogAbs,        // ElogAbs[e]
    Coll,           // Coll[e]: collision probability sum P^2
    Pmin,           // Pmin[e]: smallest atom probability
    Pmax,           // Pmax[e]: largest atom probability
    SidonRetained,  // SidonRetained[e]: retained mass of the Sidon pruning
    Max,
    Min,
    Abs,
    Ratio,
    LetRef,
  };

  Kind kind = Kind::Entropy;
  bool lowercase = false;  // h/ht spelling, preserved for printing
  std::vector<RvExprPtr> args;  // Entropy/MultEntropy: A; Mutual: A; single-expression atoms: e
  std::vector<RvExprPtr> args2;  // Mutual: B
  std::vector<RvExprPtr> cond;  // conditioning list
  std::vector<QuantityPtr> operands;  // Max/Min/Abs/Ratio
  std::string name;  // LetRef
};

struct Term {
  Coefficient coef;
  std::shared_ptr<const Atom> atom;  // null: constant term equal to coef
};

struct Quantity {
  std::vector<Term> terms;
};

QuantityPtr parse_quantity(std::string_view text);
std::string to_string(const Quantity& q);
std::string to_string(const Atom& a);
bool structurally_equal(const Quantity& a, const Quantity& b);

// Random-variable identifiers and let names referenced by q.
void collect_identifiers(const Quantity& q, std::set<std::string>& rvs);
void collect_let_refs(const Quantity& q, std::set<std::string>& lets);

// Parses a comma separated list of rv-expressions ("X,Y+Z").
std::vector<RvExprPtr> parse_rv_list(std::string_view text);

}  // namespace entadd
