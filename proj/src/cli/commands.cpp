#include "entadd/cli.hpp"

#include "entadd/catalog.hpp"
#include "entadd/dist_io.hpp"
#include "entadd/error.hpp"
#include "entadd/evaluate.hpp"
#include "entadd/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>

namespace entadd {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  std::size_t i = 1;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  while (i < s.size() && s[i] == '\'') ++i;
  return i == s.size();
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownFunctional:
    case ErrorKind::UnboundVariable:
    case ErrorKind::DomainMismatch:
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnknownRecord:
    case ErrorKind::InvalidDistribution:
    case ErrorKind::DuplicateName:
    case ErrorKind::UnknownCoordinate:
    case ErrorKind::OverlappingCoordinateSets:
    case ErrorKind::MixedGroup:
      return kExitConfig;
    default:
      return kExitEval;
  }
}

// Per-invocation state: streams, manifest, where files go.
struct Ctx {
  std::ostream& out;
  std::ostream& err;
  RunManifest manifest;
  std::string out_dir;
  std::string parsing;  // text being parsed, for caret diagnostics

  std::string read_input(const std::string& path) {
    std::string text = read_text_file(path);
    manifest.inputs.push_back({path, sha256_hex(text)});
    return text;
  }

  QuantityPtr quantity(const std::string& text) {
    parsing = text;
    auto q = parse_quantity(text);
    parsing.clear();
    return q;
  }

  // Writes the named files plus manifest.json into out_dir (if set).
  void emit(const std::vector<std::pair<std::string, std::string>>& files) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, body] : files) {
      std::ofstream f(std::filesystem::path(out_dir) / name, std::ios::binary);
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + out_dir + "/" + name);
      f << body;
      manifest.outputs.push_back({name, sha256_hex(body)});
    }
    manifest.finished = utc_timestamp();
    std::ofstream m(std::filesystem::path(out_dir) / "manifest.json", std::ios::binary);
    m << manifest.json();
  }
};

// ---- bindings -----------------------------------------------------------------

struct Bindings {
  DiscreteBindings discrete;
  ContinuousBindings models;
  std::vector<std::string> bound;  // every bound name

  bool empty() const { return discrete.singles.empty() && discrete.joints.empty() && models.empty(); }
};

// "X=Y=source": leading identifiers, then a model literal or a distribution file.
Bindings parse_bindings(Ctx& ctx, const std::vector<std::string>& binds, const std::vector<std::string>& joints) {
  Bindings b;
  std::set<std::string> seen;
  auto claim = [&](const std::string& n) {
    if (!seen.insert(n).second) throw Error(ErrorKind::DuplicateName, "variable '" + n + "' bound twice");
    b.bound.push_back(n);
  };
  for (const auto& spec : binds) {
    std::vector<std::string> names;
    std::size_t pos = 0;
    for (;;) {
      const auto eq = spec.find('=', pos);
      if (eq == std::string::npos) break;
      const std::string head = spec.substr(pos, eq - pos);
      if (!is_identifier(head)) break;
      names.push_back(head);
      pos = eq + 1;
    }
    const std::string src = spec.substr(pos);
    if (names.empty() || src.empty())
      throw Error(ErrorKind::InvalidArgument, "--bind expects NAME[=NAME...]=SOURCE, got '" + spec + "'");
    if (looks_like_model(src)) {
      const ContinuousModel m = parse_model(src);
      for (const auto& n : names) {
        claim(n);
        b.models.emplace(n, m);
      }
    } else {
      const FiniteDist d = parse_distribution(ctx.read_input(src), src);
      for (const auto& n : names) {
        claim(n);
        b.discrete.singles.push_back({n, d});
      }
    }
  }
  for (const auto& j : joints) {
    if (j == "independent") continue;  // the default relation between bindings
    JointDist jd = parse_joint(ctx.read_input(j), j);
    for (const auto& c : jd.coords()) claim(c);
    b.discrete.joints.push_back(std::move(jd));
  }
  if (!b.models.empty() && (!b.discrete.singles.empty() || !b.discrete.joints.empty()))
    throw Error(ErrorKind::DomainMismatch, "cannot mix continuous models with discrete laws");
  return b;
}

JointDist single_factor(const std::string& name, const FiniteDist& d) {
  std::vector<std::pair<JointDist::Tuple, BigInt>> atoms;
  for (std::size_t i = 0; i < d.size(); ++i) atoms.push_back({{d.value(i)}, d.weight(i)});
  return JointDist::from_weights({name}, std::move(atoms));
}

// ---- options --------------------------------------------------------------------

struct CommonOpts {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out_dir;
};

struct EvalOpts {
  std::string quantity;
  std::vector<std::string> binds, joints;
  std::string mode = "auto";
  std::size_t samples = 1u << 16;
  unsigned k = 4;
};

struct CheckOpts {
  std::string record;
  bool all = false;
  std::vector<std::string> binds, joints;
  std::size_t sweep = 0;
  std::string suite = "both";
  bool suites_for_both = false;
  std::size_t samples = 1u << 16;
  std::optional<std::size_t> max_support;
};

struct ReproOpts {
  std::string id;
  std::vector<std::int64_t> n, big_n;
  double eps = 0.6;
};

struct SearchOpts {
  std::string min_q, max_q, support, init;
  unsigned restarts = 20, epochs = 10, steps = 10;
  double eta = 1.0, h_floor = 0.1;
  std::size_t fd_block = 64;
  std::int64_t denominator_cap = 1'000'000'000;
};

// ---- eval -------------------------------------------------------------------------

int cmd_eval(Ctx& ctx, const CommonOpts& c, const EvalOpts& o) {
  ctx.manifest.config_json = ojson{{"command", "eval"},  {"quantity", o.quantity}, {"bind", o.binds},
                                   {"joint", o.joints},  {"mode", o.mode},         {"samples", o.samples},
                                   {"k", o.k},           {"seed", c.seed}}
                                 .dump();
  const QuantityPtr q = ctx.quantity(o.quantity);
  const Bindings b = parse_bindings(ctx, o.binds, o.joints);

  std::set<std::string> ids;
  collect_identifiers(*q, ids);
  std::set<std::string> lets;
  collect_let_refs(*q, lets);
  if (!lets.empty()) throw Error(ErrorKind::UnboundVariable, "let '" + *lets.begin() + "' is not defined here");
  const std::set<std::string> bound(b.bound.begin(), b.bound.end());
  for (const auto& id : ids)
    if (!bound.count(id)) throw Error(ErrorKind::UnboundVariable, "variable '" + id + "' is not bound");

  std::string mode = o.mode;
  if (mode == "auto") mode = b.models.empty() ? "exact" : "mc";
  if (mode == "exact" && !b.models.empty())
    throw Error(ErrorKind::DomainMismatch, "exact mode needs discrete bindings");
  if (mode == "mc" && b.models.empty()) throw Error(ErrorKind::DomainMismatch, "mc mode needs model bindings");

  ojson j;
  j["quantity"] = to_string(*q);
  j["mode"] = mode;
  char line[160];
  if (mode == "exact") {
    std::vector<JointDist> factors = b.discrete.joints;
    for (const auto& [n, d] : b.discrete.singles) factors.push_back(single_factor(n, d));
    ExactEvaluator ev(std::move(factors));
    const double v = ev.evaluate(*q).value;
    j["value"] = v;
    std::snprintf(line, sizeof line, "value = %.12g", v);
  } else {
    McConfig cfg;
    cfg.n_samples = o.samples;
    cfg.k = o.k;
    cfg.seed = c.seed;
    cfg.threads = c.threads;
    McEvaluator ev({b.models.begin(), b.models.end()}, cfg);
    const Est e = ev.evaluate(*q);
    const double se = ev.std_error(e);
    j["value"] = e.value;
    j["std_error"] = se;
    j["ci95"] = {e.value - 1.96 * se, e.value + 1.96 * se};
    j["closed_form"] = ev.all_closed_form();
    j["inconclusive"] = ev.inconclusive();
    j["notes"] = ev.notes();
    if (ev.all_closed_form())
      std::snprintf(line, sizeof line, "value = %.12g (closed form)", e.value);
    else
      std::snprintf(line, sizeof line, "value = %.12g +/- %.6g (95%% CI, se %.6g)", e.value, 1.96 * se, se);
  }
  j["seed"] = c.seed;
  ctx.out << line << "\n";
  ctx.emit({{"report.json", j.dump(2) + "\n"}});
  return kExitOk;
}

// ---- check ------------------------------------------------------------------------

ojson sweep_json(const SweepResult& s) {
  ojson j;
  j["record"] = s.record;
  j["mode"] = "sweep";
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["violations"] = s.violations;
  j["min_slack"] = s.min_slack;
  j["max_abs_slack"] = s.max_abs_slack;
  j["worst_trial"] = s.worst_trial;
  j["verdict"] = s.ok() ? "holds" : "violated";
  j["witness"] = s.witness;
  return j;
}

int cmd_check(Ctx& ctx, const CommonOpts& c, const CheckOpts& o) {
  ctx.manifest.config_json = ojson{{"command", "check"},
                                   {"record", o.record},
                                   {"all", o.all},
                                   {"bind", o.binds},
                                   {"joint", o.joints},
                                   {"sweep", o.sweep},
                                   {"suite", o.suite},
                                   {"suites_for_both", o.suites_for_both},
                                   {"samples", o.samples},
                                   {"seed", c.seed}}
                                 .dump();
  if (o.all == !o.record.empty()) throw Error(ErrorKind::InvalidArgument, "give a record name or --all");
  std::vector<const InequalityRecord*> recs;
  if (o.all) {
    for (const auto& r : registry()) recs.push_back(&r);
  } else {
    recs.push_back(&find_record(o.record));
  }

  McConfig mc;
  mc.n_samples = o.samples;
  mc.seed = c.seed;
  mc.threads = c.threads;

  const Bindings b = parse_bindings(ctx, o.binds, o.joints);
  bool all_ok = true;
  std::string csv;
  ojson reports = ojson::array();

  if (!b.empty()) {
    if (o.all) throw Error(ErrorKind::InvalidArgument, "--bind applies to a single record");
    if (o.sweep) throw Error(ErrorKind::InvalidArgument, "--bind and --sweep are exclusive");
    const auto& r = *recs.front();
    const SlackReport rep = b.models.empty() ? check_discrete(r, b.discrete) : check_continuous(r, b.models, mc);
    all_ok = rep.ok();
    csv = report_csv_header() + "\n" + report_csv_row(rep) + "\n";
    reports.push_back(ojson::parse(report_json(rep)));
  } else {
    SweepConfig sc;
    sc.trials = o.sweep ? o.sweep : 1000;
    sc.seed = c.seed;
    sc.threads = c.threads;
    sc.max_support = o.max_support;
    std::vector<ContinuousSuite> suites;
    if (o.suite == "lognormal" || o.suite == "both") suites.push_back(ContinuousSuite::LogNormal);
    if (o.suite == "gaussian" || o.suite == "both") suites.push_back(ContinuousSuite::Gaussian);

    csv = sweep_csv_header() + "\n";
    for (const auto* r : recs) {
      if (r->domain != Domain::Continuous) {
        const SweepResult s = random_sweep(*r, sc);
        all_ok = all_ok && s.ok();
        csv += sweep_csv_row(s) + "\n";
        reports.push_back(sweep_json(s));
        if (!s.ok())
          ctx.err << r->name << ": " << s.violations << " violations, worst trial " << s.worst_trial << "\n"
                  << s.witness;
      }
      if (r->domain == Domain::Continuous || (r->domain == Domain::Both && o.suites_for_both)) {
        for (auto suite : suites) {
          const char* tag = suite == ContinuousSuite::LogNormal ? "lognormal" : "gaussian";
          const SlackReport rep = check_continuous(*r, continuous_suite(*r, suite, c.seed), mc);
          all_ok = all_ok && rep.ok();
          csv += r->name + "[" + tag + "],1," + std::to_string(c.seed) + "," + num(rep.slack) + "," +
                 num(std::abs(rep.slack)) + "," + (rep.verdict == Verdict::Violated ? "1" : "0") + "," +
                 to_string(rep.verdict) + "\n";
          auto j = ojson::parse(report_json(rep));
          j["suite"] = tag;
          reports.push_back(std::move(j));
        }
      }
    }
  }
  ctx.out << csv;
  ctx.emit({{"report.csv", csv}, {"report.json", reports.dump(2) + "\n"}});
  return all_ok ? kExitOk : kExitViolation;
}

// ---- reproduce --------------------------------------------------------------------

int cmd_reproduce(Ctx& ctx, const ReproOpts& o) {
  ReproTable t;
  ojson cfg{{"command", "reproduce"}, {"example", o.id}};
  try {
    if (o.id == "sidon-ex1") {
      auto ns = o.big_n.empty() ? std::vector<std::int64_t>{4, 5, 6, 7, 8} : o.big_n;
      cfg["N"] = ns;
      t = reproduce_sidon_ex1(ns);
    } else if (o.id == "sidon-ex2") {
      auto ns = o.big_n.empty() ? std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8} : o.big_n;
      cfg["N"] = ns;
      t = reproduce_sidon_ex2(ns);
    } else if (o.id == "sumprod-ex1") {
      auto ns = o.n.empty() ? std::vector<std::int64_t>{100, 1000, 10000} : o.n;
      cfg["n"] = ns;
      t = reproduce_sumprod_ex1(ns);
    } else {
      const std::int64_t n = o.n.empty() ? 10000 : o.n.front();
      if (o.n.size() > 1) throw Error(ErrorKind::InvalidArgument, "sumprod-ex2 takes a single --n");
      cfg["n"] = n;
      cfg["eps"] = o.eps;
      t = reproduce_sumprod_ex2(n, o.eps);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SupportOverflow || e.kind() == ErrorKind::SupportTooLarge)
      ctx.err << "hint: the exact computation is too large; try a smaller n\n";
    ctx.manifest.config_json = cfg.dump();
    throw;
  }
  ctx.manifest.config_json = cfg.dump();
  const std::string csv = t.csv();
  ctx.out << csv;
  for (const auto& n : t.notes) ctx.err << "note: " << n << "\n";
  ctx.emit({{"table.csv", csv}});
  return t.pass ? kExitOk : kExitViolation;
}

// ---- search -----------------------------------------------------------------------

std::vector<GroupValue> parse_support(Ctx& ctx, const std::string& spec) {
  std::vector<GroupValue> out;
  const auto dots = spec.find("..");
  try {
    if (dots != std::string::npos) {
      const std::int64_t lo = std::stoll(spec.substr(0, dots));
      const std::int64_t hi = std::stoll(spec.substr(dots + 2));
      if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty support range '" + spec + "'");
      if (hi - lo >= 10'000'000) throw Error(ErrorKind::InvalidArgument, "support range too large");
      for (std::int64_t v = lo; v <= hi; ++v) out.push_back(GroupValue::integer(v));
      return out;
    }
    if (!spec.empty() && (std::isdigit(static_cast<unsigned char>(spec[0])) || spec[0] == '-')) {
      std::size_t pos = 0;
      while (pos <= spec.size()) {
        const auto comma = spec.find(',', pos);
        const std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        const std::int64_t v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        out.push_back(GroupValue::integer(v));
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      return out;
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "bad support '" + spec + "' (use a..b, a,b,c or a set file)");
  }
  return parse_set(ctx.read_input(spec), spec);
}

int cmd_search(Ctx& ctx, const CommonOpts& c, const SearchOpts& o) {
  if (o.min_q.empty() == o.max_q.empty()) throw Error(ErrorKind::InvalidArgument, "give exactly one of --min, --max");
  Objective obj;
  obj.maximize = !o.max_q.empty();
  obj.text = obj.maximize ? o.max_q : o.min_q;
  obj.quantity = ctx.quantity(obj.text);
  obj.support = parse_support(ctx, o.support);

  SearchConfig cfg;
  cfg.seed = c.seed;
  cfg.threads = c.threads;
  cfg.restarts = o.restarts;
  cfg.epochs = o.epochs;
  cfg.steps = o.steps;
  cfg.eta = o.eta;
  cfg.h_floor = o.h_floor;
  cfg.fd_block = o.fd_block;
  cfg.denominator_cap = o.denominator_cap;
  if (o.init == "zero-inflated") {
    // the support must be exactly 0..n
    const auto n = static_cast<std::int64_t>(obj.support.size()) - 1;
    for (std::int64_t i = 0; i <= n; ++i)
      if (!(obj.support[static_cast<std::size_t>(i)] == GroupValue::integer(i)))
        throw Error(ErrorKind::InvalidArgument, "--init zero-inflated needs --support 0..n");
    cfg.initial = build_zero_inflated(n);
  } else if (!o.init.empty()) {
    cfg.initial = parse_distribution(ctx.read_input(o.init), o.init);
  }
  ctx.manifest.config_json = ojson{{"command", "search"},
                                   {"objective", obj.text},
                                   {"direction", obj.maximize ? "max" : "min"},
                                   {"support", o.support},
                                   {"init", o.init},
                                   {"seed", c.seed},
                                   {"restarts", o.restarts},
                                   {"epochs", o.epochs},
                                   {"steps", o.steps},
                                   {"eta", o.eta},
                                   {"h_floor", o.h_floor},
                                   {"fd_block", o.fd_block},
                                   {"denominator_cap", o.denominator_cap}}
                                 .dump();

  const SearchResult r = optimize_over_simplex(obj, cfg);
  const std::string json = search_result_json(r, obj);
  ctx.out << json;
  if (r.guard_rejections > 0 || r.guard_at_initial)
    ctx.err << "note: H-floor guard triggered (" << r.guard_rejections << " iterates below " << cfg.h_floor
            << " nats rejected)\n";
  ctx.emit({{"result.json", json}, {"best.dist", format_distribution(r.best)}, {"trace.csv", trace_csv(r)}});
  return kExitOk;
}

// ---- registry ---------------------------------------------------------------------

int cmd_registry(Ctx& ctx, const std::string& name, bool names) {
  if (!name.empty()) {
    ctx.out << to_text(find_record(name));
  } else if (names) {
    for (const auto& r : registry()) ctx.out << r.name << "," << to_string(r.domain) << "\n";
  } else {
    ctx.out << registry_text();
  }
  return kExitOk;
}

std::string join_command(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ' ';
    out += a.find_first_of(" \t\"'") == std::string::npos ? a : "'" + a + "'";
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"entadd: entropic additive-combinatorics toolkit", "entadd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommonOpts common;
  common.seed = default_seed();
  auto add_common = [&](CLI::App* s) {
    s->add_option("--seed", common.seed, "master seed (default $ENTADD_SEED or 1)");
    s->add_option("--threads", common.threads, "worker cap; results do not depend on it")->check(CLI::Range(1u, 256u));
    s->add_option("--out", common.out_dir, "write report files and manifest.json into this directory");
  };

  EvalOpts eo;
  auto* eval = app.add_subcommand("eval", "evaluate a quantity on given laws");
  eval->add_option("quantity", eo.quantity, "quantity expression")->required();
  eval->add_option("--bind", eo.binds, "NAME[=NAME...]=FILE|MODEL (repeatable)");
  eval->add_option("--joint", eo.joints, "joint distribution file, or 'independent' (repeatable)");
  eval->add_option("--mode", eo.mode)->check(CLI::IsMember({"auto", "exact", "mc"}));
  eval->add_option("--samples", eo.samples, "Monte Carlo sample size");
  eval->add_option("--k", eo.k, "nearest-neighbour order");
  add_common(eval);

  CheckOpts co;
  auto* check = app.add_subcommand("check", "check registry records on bindings or random sweeps");
  check->add_option("record", co.record, "record name");
  check->add_flag("--all", co.all, "every registry record");
  check->add_option("--bind", co.binds, "NAME[=NAME...]=FILE|MODEL (repeatable)");
  check->add_option("--joint", co.joints, "joint distribution file, or 'independent' (repeatable)");
  check->add_option("--sweep", co.sweep, "random discrete trials per record (default 1000)");
  check->add_option("--suite", co.suite, "continuous suites")->check(CLI::IsMember({"lognormal", "gaussian", "both"}));
  check->add_flag("--continuous", co.suites_for_both, "also run the continuous suites for records of domain both");
  check->add_option("--samples", co.samples, "Monte Carlo sample size");
  check->add_option("--max-support", co.max_support, "override the records' sweep support caps");
  add_common(check);

  ReproOpts ro;
  auto* repro = app.add_subcommand("reproduce", "recompute a worked example");
  repro->add_option("example", ro.id)->required()->check(
      CLI::IsMember({"sidon-ex1", "sidon-ex2", "sumprod-ex1", "sumprod-ex2"}));
  repro->add_option("--n", ro.n, "n values (comma separated)")->delimiter(',');
  repro->add_option("--N", ro.big_n, "N values (comma separated)")->delimiter(',');
  repro->add_option("--eps", ro.eps, "epsilon for sumprod-ex2")->check(CLI::Range(1e-9, 1.0));
  add_common(repro);

  SearchOpts so;
  auto* search = app.add_subcommand("search", "local search over a simplex on a fixed support");
  search->add_option("--min", so.min_q, "objective to minimise");
  search->add_option("--max", so.max_q, "objective to maximise");
  search->add_option("--support", so.support, "a..b, a,b,c or a set file")->required();
  search->add_option("--init", so.init, "initial law file, or zero-inflated");
  search->add_option("--restarts", so.restarts)->check(CLI::Range(1u, 100000u));
  search->add_option("--epochs", so.epochs);
  search->add_option("--steps", so.steps);
  search->add_option("--eta", so.eta);
  search->add_option("--h-floor", so.h_floor, "reject iterates with H(X) below this (0 disables)");
  search->add_option("--fd-block", so.fd_block, "coordinates differentiated per step")->check(CLI::Range(1ul, 1ul << 30));
  search->add_option("--denominator-cap", so.denominator_cap)->check(CLI::Range(1L, 1L << 50));
  add_common(search);

  std::string reg_name;
  bool reg_names = false;
  auto* reg = app.add_subcommand("registry", "print registry records");
  reg->add_option("record", reg_name);
  reg->add_flag("--names", reg_names, "name,domain per line");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  Ctx ctx{out, err, {}, common.out_dir, {}};
  ctx.manifest.command = join_command(args);
  ctx.manifest.seed = common.seed;
  ctx.manifest.started = utc_timestamp();
  try {
    if (*eval) return cmd_eval(ctx, common, eo);
    if (*check) return cmd_check(ctx, common, co);
    if (*repro) return cmd_reproduce(ctx, ro);
    if (*search) return cmd_search(ctx, common, so);
    return cmd_registry(ctx, reg_name, reg_names);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    if (!ctx.parsing.empty()) {
      const std::size_t off = std::min(e.offset(), ctx.parsing.size());
      err << "  " << ctx.parsing << "\n  " << std::string(off, ' ') << "^ (offset " << e.offset() << ")\n";
    }
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitEval;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace entadd
