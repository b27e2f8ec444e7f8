#include "entadd/catalog.hpp"

#include "entadd/dist_io.hpp"
#include "entadd/error.hpp"
#include "entadd/evaluate.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace entadd {

const char* to_string(Domain d) noexcept {
  switch (d) {
    case Domain::Discrete: return "discrete";
    case Domain::Continuous: return "continuous";
    case Domain::Both: return "both";
  }
  return "?";
}

const char* to_string(Relation r) noexcept { return r == Relation::Equal ? "==" : "<="; }

const char* to_string(SupportRule s) noexcept {
  switch (s) {
    case SupportRule::Any: return "any";
    case SupportRule::Nonzero: return "nonzero";
    case SupportRule::Positive: return "positive";
  }
  return "?";
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::EstimatedHolds: return "estimated-holds";
    case Verdict::EstimatedInconclusive: return "estimated-inconclusive";
  }
  return "?";
}

std::vector<std::string> InequalityRecord::identifiers() const {
  std::vector<std::string> out;
  for (const auto& g : vars) out.insert(out.end(), g.names.begin(), g.names.end());
  if (couple) out.insert(out.end(), couple->out.begin(), couple->out.end());
  return out;
}

// ---- text form ------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !is_identifier_start(s[0])) return false;
  std::size_t i = 1;
  while (i < s.size() && is_identifier_char(s[i])) ++i;
  while (i < s.size() && s[i] == '\'') ++i;  // trailing primes: X'
  return i == s.size();
}

std::string group_text(const VarGroup& g) {
  std::string out;
  const char* sep = g.kind == VarGroup::Kind::Iid ? "~" : ",";
  for (std::size_t i = 0; i < g.names.size(); ++i) {
    if (i) out += sep;
    out += g.names[i];
  }
  return g.kind == VarGroup::Kind::Joint ? "(" + out + ")" : out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line_no, std::size_t offset, const std::string& msg) {
  throw SyntaxError(offset, source + ":" + std::to_string(line_no) + ": " + msg);
}

std::vector<VarGroup> parse_vars(const std::string& text) {
  std::vector<VarGroup> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    VarGroup g;
    if (tok.front() == '(') {
      if (tok.back() != ')') throw Error(ErrorKind::ParseError, "unterminated joint group '" + tok + "'");
      g.kind = VarGroup::Kind::Joint;
      g.names = split(tok.substr(1, tok.size() - 2), ',');
    } else if (tok.find('~') != std::string::npos) {
      g.kind = VarGroup::Kind::Iid;
      g.names = split(tok, '~');
    } else {
      g.names = {tok};
    }
    for (const auto& n : g.names) {
      if (!valid_identifier(n)) throw Error(ErrorKind::ParseError, "bad identifier '" + n + "'");
    }
    out.push_back(std::move(g));
  }
  return out;
}

void validate(const InequalityRecord& r) {
  std::set<std::string> declared;
  for (const auto& id : r.identifiers()) {
    if (!declared.insert(id).second) throw Error(ErrorKind::DuplicateName, r.name + ": identifier '" + id + "' declared twice");
  }
  if (r.couple) {
    if (!declared.count(r.couple->x) || !declared.count(r.couple->y))
      throw Error(ErrorKind::UnboundVariable, r.name + ": couple refers to undeclared variables");
    if (r.couple->out.size() != 5) throw Error(ErrorKind::ParseError, r.name + ": couple needs five output names");
  }
  std::set<std::string> lets;
  auto check_q = [&](const Quantity& q, const std::string& where) {
    std::set<std::string> ids, refs;
    collect_identifiers(q, ids);
    collect_let_refs(q, refs);
    for (const auto& id : ids) {
      if (!declared.count(id)) throw Error(ErrorKind::UnboundVariable, r.name + ": " + where + " uses undeclared '" + id + "'");
    }
    for (const auto& l : refs) {
      if (!lets.count(l)) throw Error(ErrorKind::UnboundVariable, r.name + ": " + where + " uses unknown let '" + l + "'");
    }
  };
  for (const auto& l : r.lets) {
    check_q(*l.value, "let " + l.name);
    if (declared.count(l.name) || !lets.insert(l.name).second)
      throw Error(ErrorKind::DuplicateName, r.name + ": let '" + l.name + "' clashes");
  }
  check_q(*r.lhs, "lhs");
  check_q(*r.rhs, "rhs");
}

}  // namespace

std::string to_text(const InequalityRecord& r) {
  std::string out = "record " + r.name + "\n";
  out += "ref: " + r.ref + "\n";
  out += std::string("domain: ") + to_string(r.domain) + "\n";
  out += "vars:";
  for (const auto& g : r.vars) out += " " + group_text(g);
  out += "\n";
  if (r.support != SupportRule::Any) out += std::string("support: ") + to_string(r.support) + "\n";
  if (r.max_support != 6) out += "max-support: " + std::to_string(r.max_support) + "\n";
  if (r.integers_only) out += "integers-only\n";
  if (r.couple) {
    out += "couple: " + r.couple->x + "," + r.couple->y + " ->";
    for (std::size_t i = 0; i < r.couple->out.size(); ++i) out += (i ? "," : " ") + r.couple->out[i];
    out += "\n";
  }
  for (const auto& l : r.lets) out += "let " + l.name + " = " + to_string(*l.value) + "\n";
  out += "lhs: " + to_string(*r.lhs) + "\n";
  out += std::string("rel: ") + to_string(r.rel) + "\n";
  out += "rhs: " + to_string(*r.rhs) + "\n";
  out += "end\n";
  return out;
}

std::vector<InequalityRecord> parse_records(std::string_view text, const std::string& source) {
  std::vector<InequalityRecord> out;
  std::optional<InequalityRecord> cur;
  std::size_t pos = 0, line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view raw = text.substr(pos, nl - pos);
    const std::size_t line_start = pos;
    pos = nl + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      if (nl == text.size()) break;
      continue;
    }
    const std::size_t indent = raw.find_first_not_of(" \t");
    auto value_after = [&](std::size_t key_len) { return trim(line.substr(key_len)); };
    // Offset of the value of a "key:" line inside the whole text.
    auto value_offset = [&](std::size_t key_len) {
      std::size_t off = indent + key_len;
      while (off < raw.size() && raw[off] == ' ') ++off;
      return line_start + off;
    };
    try {
      if (line.rfind("record ", 0) == 0) {
        if (cur) fail(source, line_no, line_start, "'record' inside an open record (missing 'end')");
        cur.emplace();
        cur->name = value_after(7);
        if (cur->name.empty()) fail(source, line_no, line_start, "record needs a name");
        continue;
      }
      if (!cur) fail(source, line_no, line_start, "expected 'record <name>'");
      if (line == "end") {
        if (!cur->lhs || !cur->rhs) fail(source, line_no, line_start, "record '" + cur->name + "' lacks lhs/rhs");
        validate(*cur);
        out.push_back(std::move(*cur));
        cur.reset();
      } else if (line.rfind("ref:", 0) == 0) {
        cur->ref = value_after(4);
      } else if (line.rfind("domain:", 0) == 0) {
        const auto v = value_after(7);
        if (v == "discrete") cur->domain = Domain::Discrete;
        else if (v == "continuous") cur->domain = Domain::Continuous;
        else if (v == "both") cur->domain = Domain::Both;
        else fail(source, line_no, value_offset(7), "unknown domain '" + v + "'");
      } else if (line.rfind("vars:", 0) == 0) {
        cur->vars = parse_vars(value_after(5));
      } else if (line.rfind("support:", 0) == 0) {
        const auto v = value_after(8);
        if (v == "any") cur->support = SupportRule::Any;
        else if (v == "nonzero") cur->support = SupportRule::Nonzero;
        else if (v == "positive") cur->support = SupportRule::Positive;
        else fail(source, line_no, value_offset(8), "unknown support rule '" + v + "'");
      } else if (line.rfind("max-support:", 0) == 0) {
        const auto v = value_after(12);
        try {
          cur->max_support = std::stoul(v);
        } catch (const std::exception&) {
          fail(source, line_no, value_offset(12), "bad max-support '" + v + "'");
        }
      } else if (line == "integers-only") {
        cur->integers_only = true;
      } else if (line.rfind("couple:", 0) == 0) {
        const auto v = value_after(7);
        const auto arrow = v.find("->");
        if (arrow == std::string::npos) fail(source, line_no, value_offset(7), "couple needs 'X,Y -> ...'");
        const auto in = split(v.substr(0, arrow), ',');
        if (in.size() != 2) fail(source, line_no, value_offset(7), "couple takes exactly two inputs");
        cur->couple = CoupleDirective{in[0], in[1], split(v.substr(arrow + 2), ',')};
      } else if (line.rfind("let ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(source, line_no, line_start, "let needs '='");
        const auto name = trim(line.substr(4, eq - 4));
        if (!valid_identifier(name)) fail(source, line_no, line_start, "bad let name '" + name + "'");
        std::size_t off = eq + 1;
        while (off < line.size() && line[off] == ' ') ++off;
        try {
          cur->lets.push_back({name, parse_quantity(line.substr(off))});
        } catch (const SyntaxError& e) {
          fail(source, line_no, line_start + indent + off + e.offset(), e.what());
        }
      } else if (line.rfind("lhs:", 0) == 0 || line.rfind("rhs:", 0) == 0) {
        try {
          (line[0] == 'l' ? cur->lhs : cur->rhs) = parse_quantity(value_after(4));
        } catch (const SyntaxError& e) {
          fail(source, line_no, value_offset(4) + e.offset(), e.what());
        }
      } else if (line.rfind("rel:", 0) == 0) {
        const auto v = value_after(4);
        if (v == "<=") cur->rel = Relation::LessEq;
        else if (v == "==") cur->rel = Relation::Equal;
        else fail(source, line_no, value_offset(4), "relation must be '<=' or '=='");
      } else {
        fail(source, line_no, line_start, "unrecognised line '" + line + "'");
      }
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnknownFunctional || e.kind() == ErrorKind::UnboundVariable)
        throw Error(e.kind(), source + ":" + std::to_string(line_no) + ": " +
                                  std::string(e.what()).substr(std::string(to_string(e.kind())).size() + 2));
      fail(source, line_no, line_start, e.what());
    }
    if (nl == text.size()) break;
  }
  if (cur) throw SyntaxError(text.size(), source + ": record '" + cur->name + "' is missing 'end'");
  return out;
}

InequalityRecord parse_record(std::string_view text) {
  auto rs = parse_records(text);
  if (rs.size() != 1) throw Error(ErrorKind::ParseError, "expected exactly one record, got " + std::to_string(rs.size()));
  return std::move(rs.front());
}

bool structurally_equal(const InequalityRecord& a, const InequalityRecord& b) {
  auto groups_equal = [](const std::vector<VarGroup>& x, const std::vector<VarGroup>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].kind != y[i].kind || x[i].names != y[i].names) return false;
    }
    return true;
  };
  if (a.name != b.name || a.ref != b.ref || a.domain != b.domain || !groups_equal(a.vars, b.vars) ||
      a.support != b.support || a.max_support != b.max_support || a.integers_only != b.integers_only ||
      a.rel != b.rel || a.lets.size() != b.lets.size() || a.couple.has_value() != b.couple.has_value())
    return false;
  if (a.couple && (a.couple->x != b.couple->x || a.couple->y != b.couple->y || a.couple->out != b.couple->out))
    return false;
  for (std::size_t i = 0; i < a.lets.size(); ++i) {
    if (a.lets[i].name != b.lets[i].name || !structurally_equal(*a.lets[i].value, *b.lets[i].value)) return false;
  }
  return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
}

// ---- discrete checking ----------------------------------------------------

namespace {

bool support_ok(const GroupValue& v, SupportRule rule) {
  switch (rule) {
    case SupportRule::Any: return true;
    case SupportRule::Nonzero: return !v.is_zero();
    case SupportRule::Positive: return v.is_numeric() && !v.is_zero() && v.as_rational() > 0;
  }
  return true;
}

JointDist as_factor(const std::string& name, const FiniteDist& d) {
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  for (std::size_t i = 0; i < d.size(); ++i) atoms.push_back({{d.value(i)}, d.weight(i)});
  return JointDist::from_weights({name}, std::move(atoms));
}

std::string summarize(const std::vector<JointDist>& factors) {
  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += "; ";
    std::string names;
    for (const auto& c : f.coords()) names += (names.empty() ? "" : ",") + c;
    out += (f.arity() > 1 ? "(" + names + ")" : names) + ":" + std::to_string(f.size()) + " atoms";
  }
  return out;
}

// Replaces the factor(s) holding x and y by the coupled law over
// (x, y, X1, Y1, X2, Y2, S) with x = X1, y = Y1.
void apply_couple(const CoupleDirective& c, std::vector<JointDist>& factors, std::size_t cap) {
  auto find = [&](const std::string& n) -> std::size_t {
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (factors[i].has(n)) return i;
    throw Error(ErrorKind::UnboundVariable, "variable '" + n + "' is not bound");
  };
  std::size_t fx = find(c.x), fy = find(c.y);
  JointDist pair = factors[fx];
  if (fx != fy) pair = product(factors[fx], factors[fy], cap);
  if (pair.arity() != 2)
    throw Error(ErrorKind::InvalidArgument, "coupled pair must not share a joint law with other variables");
  pair = pair.marginal({c.x, c.y});
  const JointDist copies = cond_indep_copies_given_sum(pair);
  const auto& k = copies.coords();
  std::vector<std::pair<std::string, RvExprPtr>> exprs{{c.x, make_var(k[0])}, {c.y, make_var(k[1])}};
  for (std::size_t i = 0; i < 5; ++i) exprs.push_back({c.out[i], make_var(k[i])});
  JointDist coupled = pushforward(copies, exprs, cap);
  std::vector<JointDist> rest;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (i != fx && i != fy) rest.push_back(std::move(factors[i]));
  rest.push_back(std::move(coupled));
  factors = std::move(rest);
}

void finish(SlackReport& rep, const InequalityRecord& r, QuantityEvaluator& ev) {
  for (const auto& l : r.lets) {
    Est v = ev.evaluate(*l.value);
    rep.lets[l.name] = v.value;
    ev.set_let(l.name, std::move(v));
  }
  const Est lhs = ev.evaluate(*r.lhs);
  const Est rhs = ev.evaluate(*r.rhs);
  rep.lhs = lhs.value;
  rep.rhs = rhs.value;
  rep.slack = rhs.value - lhs.value;
  Est diff = rhs;
  diff.value -= lhs.value;
  for (const auto& [k, g] : lhs.grad) diff.grad[k] -= g;
  if (rep.mode == "mc") rep.std_error = ev.std_error(diff);
}

}  // namespace

SlackReport check_discrete(const InequalityRecord& r, const DiscreteBindings& b, std::size_t cap) {
  if (r.domain == Domain::Continuous)
    throw Error(ErrorKind::DomainMismatch, "record '" + r.name + "' is continuous-only");

  std::set<std::string> wanted;
  for (const auto& g : r.vars) wanted.insert(g.names.begin(), g.names.end());

  std::map<std::string, FiniteDist> singles;
  for (const auto& [n, d] : b.singles) {
    if (!singles.emplace(n, d).second) throw Error(ErrorKind::DuplicateName, "variable '" + n + "' bound twice");
  }
  std::vector<JointDist> factors;
  std::set<std::string> in_joint;
  for (const auto& j : b.joints) {
    bool used = false;
    for (const auto& c : j.coords()) used = used || wanted.count(c);
    if (!used) continue;
    for (const auto& c : j.coords()) {
      if (singles.count(c) || !in_joint.insert(c).second)
        throw Error(ErrorKind::DuplicateName, "variable '" + c + "' bound twice");
    }
    factors.push_back(j);
  }
  // i.i.d. groups: unbound copies take the law of a bound member.
  for (const auto& g : r.vars) {
    if (g.kind != VarGroup::Kind::Iid) continue;
    const FiniteDist* law = nullptr;
    for (const auto& n : g.names) {
      auto it = singles.find(n);
      if (it != singles.end()) {
        law = &it->second;
        break;
      }
    }
    if (!law) continue;
    const FiniteDist copy = *law;
    for (const auto& n : g.names)
      if (!singles.count(n) && !in_joint.count(n)) singles.emplace(n, copy);
  }
  for (const auto& n : wanted) {
    if (in_joint.count(n)) continue;
    auto it = singles.find(n);
    if (it == singles.end()) throw Error(ErrorKind::UnboundVariable, "variable '" + n + "' is not bound");
    factors.push_back(as_factor(n, it->second));
  }
  if (r.support != SupportRule::Any) {
    for (const auto& f : factors) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t c = 0; c < f.arity(); ++c) {
          if (!support_ok(f.tuple(i)[c], r.support))
            throw Error(ErrorKind::DomainMismatch, "record '" + r.name + "' needs " + to_string(r.support) +
                                                      " values; '" + f.coords()[c] + "' takes " +
                                                      f.tuple(i)[c].to_string());
        }
      }
    }
  }

  SlackReport rep;
  rep.record = r.name;
  rep.mode = "exact";
  rep.bindings = summarize(factors);
  if (r.couple) apply_couple(*r.couple, factors, cap);
  ExactEvaluator ev(std::move(factors), cap);
  finish(rep, r, ev);
  if (r.rel == Relation::Equal)
    rep.verdict = std::abs(rep.slack) <= kDiscreteTolerance ? Verdict::Holds : Verdict::Violated;
  else
    rep.verdict = rep.slack >= -kDiscreteTolerance ? Verdict::Holds : Verdict::Violated;
  return rep;
}

// ---- continuous checking --------------------------------------------------

SlackReport check_continuous(const InequalityRecord& r, const ContinuousBindings& b, const McConfig& cfg) {
  if (r.domain == Domain::Discrete)
    throw Error(ErrorKind::DomainMismatch, "record '" + r.name + "' is discrete-only");
  if (r.couple) throw Error(ErrorKind::DomainMismatch, "coupled records need discrete laws");
  std::map<std::string, ContinuousModel> models;
  for (const auto& g : r.vars) {
    if (g.kind == VarGroup::Kind::Joint)
      throw Error(ErrorKind::DomainMismatch, "joint groups need discrete laws");
    const ContinuousModel* law = nullptr;
    for (const auto& n : g.names) {
      auto it = b.find(n);
      if (it != b.end()) {
        if (!law) law = &it->second;
        models.emplace(n, it->second);
      }
    }
    for (const auto& n : g.names) {
      if (models.count(n)) continue;
      if (g.kind != VarGroup::Kind::Iid || !law)
        throw Error(ErrorKind::UnboundVariable, "variable '" + n + "' is not bound");
      models.emplace(n, *law);
    }
  }
  std::string summary;
  for (const auto& [n, m] : models) summary += (summary.empty() ? "" : "; ") + n + "=" + m.to_string();

  SlackReport rep;
  rep.record = r.name;
  rep.mode = "mc";
  rep.bindings = summary;
  rep.seed = cfg.seed;
  McEvaluator ev(std::move(models), cfg);
  finish(rep, r, ev);
  const double se = rep.std_error.value_or(0.0);
  rep.notes = ev.notes();
  if (ev.all_closed_form()) {
    // Closed forms are exact up to floating point.
    const double tol = 1e-12 * std::max({1.0, std::abs(rep.lhs), std::abs(rep.rhs)});
    const bool ok = r.rel == Relation::Equal ? std::abs(rep.slack) <= tol : rep.slack >= -tol;
    rep.verdict = ok ? Verdict::Holds : Verdict::Violated;
  } else if (ev.inconclusive()) {
    rep.verdict = Verdict::EstimatedInconclusive;
  } else {
    const bool ok = r.rel == Relation::Equal ? std::abs(rep.slack) <= 3 * se + 1e-12 : rep.slack >= -3 * se;
    rep.verdict = ok ? Verdict::EstimatedHolds : Verdict::Violated;
  }
  return rep;
}

// ---- output ---------------------------------------------------------------

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

std::string report_json(const SlackReport& r) {
  nlohmann::ordered_json j;
  j["record"] = r.record;
  j["mode"] = r.mode;
  j["bindings"] = r.bindings;
  nlohmann::ordered_json lets = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.lets) lets[k] = v;
  j["lets"] = lets;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  if (r.std_error) j["ci"] = *r.std_error;
  j["verdict"] = to_string(r.verdict);
  j["seed"] = r.seed;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j.dump();
}

std::string report_csv_header() { return "record,mode,seed,lhs,rhs,slack,ci,verdict"; }

std::string report_csv_row(const SlackReport& r) {
  return r.record + "," + r.mode + "," + std::to_string(r.seed) + "," + num(r.lhs) + "," + num(r.rhs) + "," +
         num(r.slack) + "," + (r.std_error ? num(*r.std_error) : "") + "," + to_string(r.verdict);
}

std::string sweep_csv_header() { return "record,trials,seed,min_slack,max_abs_slack,violations,verdict"; }

std::string sweep_csv_row(const SweepResult& r) {
  return r.record + "," + std::to_string(r.trials) + "," + std::to_string(r.seed) + "," + num(r.min_slack) + "," +
         num(r.max_abs_slack) + "," + std::to_string(r.violations) + "," + (r.ok() ? "holds" : "violated");
}

}  // namespace entadd
