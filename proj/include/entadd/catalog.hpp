#pragma once

#include "entadd/continuous.hpp"
#include "entadd/finite_dist.hpp"
#include "entadd/joint_dist.hpp"
#include "entadd/quantity.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entadd {

enum class Domain { Discrete, Continuous, Both };
enum class Relation { LessEq, Equal };
// Constraint on the values of every record variable (multiplicative
// statements need X != 0, quotients by sums need positive supports).
enum class SupportRule { Any, Nonzero, Positive };

const char* to_string(Domain d) noexcept;
const char* to_string(Relation r) noexcept;
const char* to_string(SupportRule s) noexcept;

// How the record's variables are laid out:
//   X          a free law, independent of everything else
//   X~X'~X''   i.i.d. copies of one law
//   (X,Y,Z)    one arbitrary joint law
struct VarGroup {
  enum class Kind { Single, Iid, Joint };
  Kind kind = Kind::Single;
  std::vector<std::string> names;
};

// Replaces the law of (x,y) by two copies conditionally independent given
// x+y, exposed as out = (X1,Y1,X2,Y2,S); x and y stay bound to the first copy.
struct CoupleDirective {
  std::string x;
  std::string y;
  std::vector<std::string> out;
};

struct LetDef {
  std::string name;
  QuantityPtr value;
};

struct InequalityRecord {
  std::string name;
  std::string ref;  // descriptive name and ASCII statement
  Domain domain = Domain::Discrete;
  std::vector<VarGroup> vars;
  SupportRule support = SupportRule::Any;
  std::size_t max_support = 6;  // sweep support cap
  bool integers_only = false;   // sweeps skip Z_m supports
  std::optional<CoupleDirective> couple;
  std::vector<LetDef> lets;
  QuantityPtr lhs;
  Relation rel = Relation::LessEq;
  QuantityPtr rhs;

  std::vector<std::string> identifiers() const;
};

// Text block form:
//   record <name>
//   ref: ...
//   domain: discrete|continuous|both
//   vars: <groups>
//   support: any|nonzero|positive        (optional)
//   max-support: <n>                     (optional)
//   integers-only                        (optional)
//   couple: X,Y -> X1,Y1,X2,Y2,S         (optional)
//   let <name> = <quantity>              (zero or more, in order)
//   lhs: <quantity>
//   rel: <= | ==
//   rhs: <quantity>
//   end
std::string to_text(const InequalityRecord& r);
std::vector<InequalityRecord> parse_records(std::string_view text, const std::string& source = "<registry>");
InequalityRecord parse_record(std::string_view text);
bool structurally_equal(const InequalityRecord& a, const InequalityRecord& b);

const std::vector<InequalityRecord>& registry();
const InequalityRecord& find_record(const std::string& name);  // UnknownRecord
std::string registry_text();

// ---- checking -------------------------------------------------------------

inline constexpr double kDiscreteTolerance = 1e-9;

struct DiscreteBindings {
  std::vector<std::pair<std::string, FiniteDist>> singles;
  std::vector<JointDist> joints;
};

using ContinuousBindings = std::map<std::string, ContinuousModel>;

enum class Verdict { Holds, Violated, EstimatedHolds, EstimatedInconclusive };
const char* to_string(Verdict v) noexcept;

struct SlackReport {
  std::string record;
  std::string mode;  // "exact" | "mc"
  std::string bindings;  // short summary
  std::map<std::string, double> lets;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs, nats
  std::optional<double> std_error;  // continuous only
  Verdict verdict = Verdict::Holds;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;

  bool ok() const { return verdict == Verdict::Holds || verdict == Verdict::EstimatedHolds; }
};

SlackReport check_discrete(const InequalityRecord& r, const DiscreteBindings& b,
                           std::size_t cap = kDefaultSupportCap);
SlackReport check_continuous(const InequalityRecord& r, const ContinuousBindings& b, const McConfig& cfg);

std::string report_json(const SlackReport& r);  // one JSON object
std::string report_csv_header();
std::string report_csv_row(const SlackReport& r);

// ---- sweeps ---------------------------------------------------------------

struct SweepConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::optional<std::size_t> max_support;  // overrides the record's cap
  std::int64_t range = 20;                 // integer values in [-range, range]
  std::vector<std::int64_t> moduli{5, 7, 12};
  std::size_t weight_granularity = 24;  // random compositions of this many units (scaled)
};

struct SweepResult {
  std::string record;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double min_slack = 0.0;
  double max_abs_slack = 0.0;
  std::size_t worst_trial = 0;
  std::string witness;  // worst bindings in the distribution text format
  std::uint64_t seed = 0;

  bool ok() const { return violations == 0; }
};

// Random discrete bindings for a record, deterministic in (seed, trial).
DiscreteBindings random_bindings(const InequalityRecord& r, const SweepConfig& cfg, std::size_t trial);
SweepResult random_sweep(const InequalityRecord& r, const SweepConfig& cfg);
std::string format_bindings(const DiscreteBindings& b);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepResult& r);

// Default continuous suites for records with a continuous side: every law is
// LogNormal (resp. Gaussian) with parameters drawn from the seed.
enum class ContinuousSuite { LogNormal, Gaussian };
ContinuousBindings continuous_suite(const InequalityRecord& r, ContinuousSuite suite, std::uint64_t seed);

}  // namespace entadd
