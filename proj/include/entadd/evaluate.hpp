#pragma once

#include "entadd/continuous.hpp"
#include "entadd/finite_dist.hpp"
#include "entadd/joint_dist.hpp"
#include "entadd/quantity.hpp"

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace entadd {

// A value together with its linear sensitivity to the underlying primitive
// estimates (indices into the evaluator's standard-error table). Exact
// evaluation has no primitives, so the gradient stays empty.
struct Est {
  double value = 0.0;
  std::map<std::size_t, double> grad;
};

// Shared quantity machinery: linear combinations, max/min/abs/ratio, lets,
// and per-atom caching. Back ends supply primitive atoms.
class QuantityEvaluator {
 public:
  virtual ~QuantityEvaluator() = default;

  Est evaluate(const Quantity& q);
  void set_let(const std::string& name, Est value);
  bool has_let(const std::string& name) const { return lets_.count(name) != 0; }
  double std_error(const Est& e) const;

  // Set when a diagnostic (e.g. heavy divisor tails) makes MC output unreliable.
  bool inconclusive() const { return inconclusive_; }
  const std::vector<std::string>& notes() const { return notes_; }

 protected:
  virtual Est primitive(const Atom& a) = 0;
  std::size_t add_primitive(double std_error);
  void flag_inconclusive(const std::string& note);

 private:
  Est atom_value(const Atom& a);

  std::unordered_map<std::string, Est> cache_;
  std::map<std::string, Est> lets_;
  std::vector<double> primitive_se_;
  bool inconclusive_ = false;
  std::vector<std::string> notes_;
};

// Exact discrete evaluation. Bindings are independent factors; a factor is a
// joint law over one or more identifiers (a single FiniteDist is a factor
// with one coordinate). Identifiers in different factors are independent.
class ExactEvaluator : public QuantityEvaluator {
 public:
  explicit ExactEvaluator(std::vector<JointDist> factors, std::size_t cap = kDefaultSupportCap);
  static ExactEvaluator independent(const std::vector<std::pair<std::string, FiniteDist>>& bindings,
                                    std::size_t cap = kDefaultSupportCap);

  // Law of an rv-expression, built by exact convolution where operands are
  // independent and by enumeration of the shared factors otherwise.
  const FiniteDist& dist_of(const RvExpr& e);
  double entropy_of(const std::vector<RvExprPtr>& exprs);

 protected:
  Est primitive(const Atom& a) override;

 private:
  std::set<std::size_t> factors_of(const RvExpr& e) const;
  JointDist enumerate(const std::set<std::size_t>& factors) const;

  std::vector<JointDist> factors_;
  std::map<std::string, std::size_t> owner_;
  std::size_t cap_;
  std::unordered_map<std::string, FiniteDist> dist_cache_;
  std::unordered_map<std::string, double> entropy_cache_;
};

// Monte Carlo / closed-form evaluation over independent continuous models.
class McEvaluator : public QuantityEvaluator {
 public:
  McEvaluator(std::map<std::string, ContinuousModel> models, McConfig cfg);

  // All primitive estimates used so far took a closed-form route.
  bool all_closed_form() const { return all_closed_; }

  // Single-expression primitives (value + standard error).
  EstimateWithCI entropy_estimate(const RvExpr& e);
  EstimateWithCI log_abs_estimate(const RvExpr& e);

 protected:
  Est primitive(const Atom& a) override;

 private:
  Est primitive_of(const std::string& key, const EstimateWithCI& est);
  Est entropy_of(const std::vector<RvExprPtr>& exprs, bool multiplicative);
  std::vector<double> sample_expression(const RvExpr& e, const std::string& key);

  std::map<std::string, ContinuousModel> models_;
  McConfig cfg_;
  bool all_closed_ = true;
  std::unordered_map<std::string, Est> primitive_cache_;
};

}  // namespace entadd
