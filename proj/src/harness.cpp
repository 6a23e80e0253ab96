#include "hierfix/harness.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <json.hpp>
#include <map>
#include <ostream>
#include <sstream>

#include "hierfix/random.hpp"
#include "hierfix/registry.hpp"

namespace hierfix {

using json = nlohmann::json;

namespace {

constexpr std::size_t kDeviationSamples = 128;

std::uint64_t certify_seed(const ExperimentSpec& spec) { return derive_seed(spec.seed, "vi_residual"); }

std::string format_vector(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + "]";
}

std::string describe_schedule(const ScheduleDef& s) {
  if (s.kind == "power") return "power(s=" + format_double(s.s) + ", t=" + format_double(s.t) + ")";
  return "table(" + std::to_string(s.alpha.size()) + " alpha, " + std::to_string(s.beta.size()) + " beta)";
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write output file '" + path + "'");
  return os;
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

const ConvexSet& validation_region(const ProblemDef& def) {
  if (def.region) return *def.region;
  if (def.set.kind() == "box" || def.set.kind() == "ball") return def.set;
  throw UsageError("sampling region unbounded and no bounding box configured");
}

std::vector<Variant> applicable_variants(const AssembledProblem& a) {
  std::vector<Variant> v{Variant::Main, Variant::Sahu, Variant::WangXu, Variant::Ceng};
  if (a.combo) v.push_back(Variant::ConvexCombo);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace, bool certified) {
  os << "n,alpha,beta,a_n,step_norm,fp_residual";
  if (certified) os << ",vi_residual,dist_oracle";
  os << '\n';
  for (const TraceRow& r : trace.rows) {
    os << r.n << ',' << format_double(r.alpha) << ',' << format_double(r.beta) << ','
       << format_double(r.a_n) << ',' << format_double(r.step_norm) << ','
       << format_double(r.fp_residual);
    if (certified) os << ',' << optional_cell(r.vi_residual) << ',' << optional_cell(r.dist_oracle);
    os << '\n';
  }
}

SolveOutcome solve_experiment(const ExperimentSpec& spec) {
  AssembledProblem a = assemble(spec.problem, spec.constants);
  const VariantSetup setup = make_variant(spec.variant, {a.problem, spec.schedule.build(), a.combo});
  SolveOutcome o;
  TraceHook hook;
  if (spec.certify) {
    try {
      o.oracle = oracle_solve(setup.problem);
    } catch (const OracleError& e) {
      o.oracle_note = e.what();
    }
    hook = make_certifier(setup.problem, o.oracle ? std::optional<Vector>(o.oracle->solution) : std::nullopt,
                          spec.samples, certify_seed(spec));
  }
  o.result = run(setup.problem, setup.schedule, spec.x1, spec.stop, setup.variant, hook);
  if (spec.certify && !o.result.trace.rows.empty()) o.final_vi_residual = o.result.trace.rows.back().vi_residual;
  return o;
}

int cmd_solve(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const std::string path = spec.out.empty() ? "trace.csv" : spec.out;
  SolveOutcome o;
  try {
    o = solve_experiment(spec);
  } catch (const DivergenceError& e) {
    auto os = open_output(path);
    write_trace_csv(os, e.partial_trace(), spec.certify);
    err << "error: " << e.what() << "\n"
        << "partial trace (" << e.partial_trace().rows.size() << " rows) written to " << path << "\n";
    return kExitFailure;
  }
  {
    auto os = open_output(path);
    write_trace_csv(os, o.result.trace, spec.certify);
  }
  const RunResult& r = o.result;
  out << "problem: " << spec.problem.name << "  variant: " << to_string(spec.variant)
      << "  schedule: " << describe_schedule(spec.schedule) << "\n";
  out << "steps: " << r.steps << " (max " << spec.stop.max_steps << ")\n";
  out << "status: " << (r.converged ? "converged" : "not converged") << "\n";
  out << "final: " << format_vector(r.x) << "\n";
  if (!r.trace.rows.empty()) {
    const TraceRow& last = r.trace.rows.back();
    out << "step_norm: " << format_double(last.step_norm) << "  fp_residual: " << format_double(last.fp_residual)
        << "\n";
  }
  if (spec.certify) {
    out << "certify: vi_residual=" << (o.final_vi_residual ? format_double(*o.final_vi_residual) : "n/a")
        << " samples=" << spec.samples << " seed=" << certify_seed(spec);
    if (o.oracle)
      out << " dist_oracle=" << format_double(distance(r.x, o.oracle->solution))
          << " oracle=" << format_vector(o.oracle->solution);
    else
      out << " oracle unavailable: " << o.oracle_note;
    out << "\n";
  }
  out << "trace: " << path << " (" << r.trace.rows.size() << " rows)\n";
  return kExitOk;
}

int cmd_compare(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  const AssembledProblem a = assemble(spec.problem, spec.constants);
  const Schedule sch = spec.schedule.build();
  const std::vector<Variant> tags = spec.variants.empty() ? applicable_variants(a) : spec.variants;
  for (std::size_t i = 0; i < tags.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (tags[i] == tags[j]) throw UsageError("variant " + to_string(tags[i]) + " listed twice");

  std::vector<VariantSetup> setups;
  for (Variant tag : tags) setups.push_back(make_variant(tag, {a.problem, sch, a.combo}));

  std::optional<Vector> oracle;
  std::string oracle_note;
  try {
    oracle = oracle_solve(a.problem).solution;
  } catch (const OracleError& e) {
    oracle_note = e.what();
  }
  TraceHook hook = [&oracle](const SolverState& s, TraceRow& row) {
    if (oracle) row.dist_oracle = distance(s.x, *oracle);
  };

  struct Outcome {
    RunResult result;
    std::optional<std::string> failure;
  };
  std::vector<std::future<Outcome>> futures;
  for (const VariantSetup& setup : setups)
    futures.push_back(std::async(std::launch::async, [&spec, &setup, &hook] {
      try {
        return Outcome{run(setup.problem, setup.schedule, spec.x1, spec.stop, setup.variant, hook), {}};
      } catch (const DivergenceError& e) {
        Outcome o;
        o.result.trace = e.partial_trace();
        o.failure = e.what();
        return o;
      }
    }));
  std::vector<Outcome> outcomes;
  for (auto& f : futures) outcomes.push_back(f.get());

  std::map<std::size_t, std::vector<const TraceRow*>> aligned;
  for (std::size_t k = 0; k < outcomes.size(); ++k)
    for (const TraceRow& row : outcomes[k].result.trace.rows) {
      auto& slot = aligned[row.n];
      slot.resize(outcomes.size(), nullptr);
      slot[k] = &row;
    }

  const std::string path = spec.out.empty() ? "compare.csv" : spec.out;
  {
    auto os = open_output(path);
    os << "n";
    for (Variant tag : tags) os << ',' << to_string(tag) << "_step_norm," << to_string(tag) << "_dist_oracle";
    os << '\n';
    for (const auto& [n, rows] : aligned) {
      os << n;
      for (const TraceRow* row : rows) {
        if (row)
          os << ',' << format_double(row->step_norm) << ',' << optional_cell(row->dist_oracle);
        else
          os << ",,";
      }
      os << '\n';
    }
  }

  out << "problem: " << spec.problem.name << "  schedule: " << describe_schedule(spec.schedule) << "\n";
  if (oracle)
    out << "oracle: " << format_vector(*oracle) << "\n";
  else
    out << "oracle unavailable: " << oracle_note << "\n";
  int code = kExitOk;
  for (std::size_t k = 0; k < tags.size(); ++k) {
    const Outcome& o = outcomes[k];
    out << to_string(tags[k]) << ": ";
    if (o.failure) {
      out << "diverged (" << *o.failure << ")\n";
      err << "error: " << to_string(tags[k]) << ": " << *o.failure << "\n";
      code = kExitFailure;
      continue;
    }
    out << "steps " << o.result.steps << ", " << (o.result.converged ? "converged" : "not converged")
        << ", final " << format_vector(o.result.x);
    if (oracle) out << ", dist_oracle " << format_double(distance(o.result.x, *oracle));
    out << "\n";
  }
  out << "comparison: " << path << " (" << aligned.size() << " rows)\n";
  return code;
}

int cmd_validate(const ExperimentSpec& spec, std::ostream& out, std::ostream& /*err*/) {
  const Constants c = resolve_constants(spec.problem, spec.constants);
  const ConstantsReport cr = validate_constants(c);
  const Schedule sch = spec.schedule.build_unchecked();
  const NearlyNonexpansiveFamily family = build_family(spec.problem);
  const ConvexSet& region = validation_region(spec.problem);
  const std::uint64_t dev_seed = derive_seed(spec.seed, "deviation");
  const Sequence deviation = [&](std::size_t n) {
    return deviation_estimate(family, n, n + 1, region, kDeviationSamples, dev_seed);
  };
  ScheduleReport rep = validate_schedule(sch, family.a_seq, deviation, spec.horizon);
  rep.deviation_region = region.kind() + " region, " + std::to_string(kDeviationSamples) +
                         " sampled points, seed " + std::to_string(dev_seed);

  out << "problem: " << spec.problem.name << "  schedule: " << describe_schedule(spec.schedule) << "\n";
  out << "constants: mu=" << format_double(c.mu) << " rho=" << format_double(c.rho)
      << " gamma=" << format_double(c.gamma) << " L=" << format_double(c.lip) << " eta=" << format_double(c.eta)
      << " nu=" << format_double(cr.nu) << " mu_upper=" << format_double(cr.mu_upper) << "\n";
  out << "  0<mu<2eta/L^2: " << (cr.mu_ok ? "ok" : "violated") << "\n";
  out << "  0<=rho*gamma<nu: " << (cr.rho_gamma_ok ? "ok" : "violated") << "\n";
  for (const auto& f : cr.failures) out << "  " << f << "\n";
  out << "conditions (horizon " << rep.horizon << ", deviation over " << rep.deviation_region << "):\n";
  for (const ConditionVerdict& v : rep.items) {
    out << "  " << v.condition << "  " << v.clause << ": " << to_string(v.verdict);
    if (v.analytic) out << " (analytic " << to_string(*v.analytic) << ")";
    if (!v.tail.empty()) out << "  last=" << format_double(v.tail.back().second);
    if (!v.note.empty()) out << "  " << v.note;
    out << "\n";
  }
  out << "overall: " << to_string(rep.overall()) << "\n";

  // Declared constants are trusted; sampling only warns about them.
  const std::size_t d = spec.problem.set.dimension();
  const std::uint64_t audit_seed = derive_seed(spec.seed, "audit");
  std::vector<std::pair<std::string, AuditResult>> audits;
  audits.emplace_back("S nonexpansive", audit_nonexpansive(build_nonexpansive(spec.problem.S), region, 1000, audit_seed));
  audits.emplace_back("V gamma-Lipschitz", audit_lipschitz(build_lipschitz(spec.problem.V, d), region, 1000, audit_seed));
  audits.emplace_back("F Lipschitz and strongly monotone",
                      audit_strongly_monotone(build_strongly_monotone(spec.problem.F, d), region, 1000, audit_seed));
  for (std::size_t n : {1, 2, 5, 10, 100})
    audits.emplace_back("T_" + std::to_string(n) + " nearly nonexpansive",
                        audit_nearly_nonexpansive(family, n, region, 1000, audit_seed));
  out << "audits (1000 sampled pairs each, seed " << audit_seed << "):\n";
  for (const auto& [what, a] : audits) {
    out << "  " << what << ": " << (a.ok() ? "ok" : "warning") << " (" << a.violations << " violations, worst excess "
        << format_double(a.worst_excess) << ")\n";
  }

  json j;
  j["problem"] = spec.problem.name;
  j["seed"] = spec.seed;
  j["constants"] = {{"mu", c.mu},         {"rho", c.rho},     {"gamma", c.gamma},
                    {"L", c.lip},         {"eta", c.eta},     {"mu_ok", cr.mu_ok},
                    {"rho_gamma_ok", cr.rho_gamma_ok},        {"failures", cr.failures}};
  j["constants"]["nu"] = std::isfinite(cr.nu) ? json(cr.nu) : json(nullptr);
  j["constants"]["mu_upper"] = std::isfinite(cr.mu_upper) ? json(cr.mu_upper) : json(nullptr);
  json items = json::array();
  for (const ConditionVerdict& v : rep.items) {
    json item{{"condition", v.condition}, {"clause", v.clause}, {"verdict", to_string(v.verdict)}, {"note", v.note}};
    item["analytic"] = v.analytic ? json(to_string(*v.analytic)) : json(nullptr);
    item["last"] = v.tail.empty() || !std::isfinite(v.tail.back().second) ? json(nullptr) : json(v.tail.back().second);
    items.push_back(item);
  }
  j["schedule"] = {{"horizon", rep.horizon},
                   {"deviation_region", rep.deviation_region},
                   {"deviation_samples", kDeviationSamples},
                   {"overall", to_string(rep.overall())},
                   {"items", items}};
  json audit_items = json::array();
  for (const auto& [what, a] : audits)
    audit_items.push_back({{"check", what}, {"samples", a.samples}, {"violations", a.violations}, {"ok", a.ok()}});
  j["audits"] = {{"seed", audit_seed}, {"items", audit_items}};
  if (spec.out.empty()) {
    out << j.dump(2) << "\n";
  } else {
    auto os = open_output(spec.out);
    os << j.dump(2) << "\n";
    out << "report: " << spec.out << "\n";
  }
  return kExitOk;
}

int cmd_oracle(const ExperimentSpec& spec, std::ostream& out, std::ostream& /*err*/) {
  const AssembledProblem a = assemble(spec.problem, spec.constants);
  const OracleResult r = oracle_solve(a.problem);
  const double vr = vi_residual(r.solution, a.problem, spec.samples, certify_seed(spec));
  out << "problem: " << spec.problem.name << "\n";
  out << "solution: " << format_vector(r.solution) << "\n";
  out << "iterations: " << r.iterations << "  final_change: " << format_double(r.final_residual)
      << "  method: " << r.method << "\n";
  out << "vi_residual: " << format_double(vr) << " samples=" << spec.samples << " seed=" << certify_seed(spec)
      << "\n";
  if (!spec.out.empty()) {
    json j{{"problem", spec.problem.name},
           {"solution", r.solution.values()},
           {"iterations", r.iterations},
           {"final_change", r.final_residual},
           {"vi_residual", vr},
           {"samples", spec.samples},
           {"seed", certify_seed(spec)}};
    auto os = open_output(spec.out);
    os << j.dump(2) << "\n";
  }
  return kExitOk;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hierarchical fixed-point / variational inequality solver", "hierfix"};
  app.require_subcommand(1);

  std::string config_path, problem, out_path;
  std::uint64_t seed = 0;
  std::size_t max_steps = 0;
  bool certify = false;
  std::vector<std::string> variants;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"solve", "run one variant and write the iteration trace CSV"},
      {"compare", "run several variants on identical inputs and write an aligned CSV"},
      {"validate", "report the parameter conditions and the constants check"},
      {"oracle", "solve the variational inequality with the reference projected-gradient method"}};
  std::map<std::string, std::map<std::string, CLI::Option*>> opts;
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    auto& o = opts[name];
    o["config"] = sub->add_option("--config", config_path, "JSON experiment config");
    o["problem"] = sub->add_option("--problem", problem, "registry problem (P1..P4)");
    o["out"] = sub->add_option("--out", out_path, "output file");
    o["seed"] = sub->add_option("--seed", seed, "top-level seed");
    o["max-steps"] = sub->add_option("--max-steps", max_steps, "iteration cap");
    o["certify"] = sub->add_flag("--certify", certify, "add vi_residual and dist_oracle columns");
    o["variant"] = sub->add_option("--variant", variants, "variant tag(s): MAIN SAHU WANG_XU CENG CONVEX_COMBO")
                       ->delimiter(',');
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (const auto& [name, desc] : commands)
    if (app.got_subcommand(name)) command = name;
  auto& o = opts[command];

  try {
    json root = json::object();
    if (o["config"]->count()) {
      std::ifstream in(config_path);
      if (!in) throw ParseError("", "cannot read config file '" + config_path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      try {
        root = json::parse(ss.str());
      } catch (const json::parse_error& e) {
        throw ParseError("", std::string("malformed JSON: ") + e.what());
      }
      if (!root.is_object()) throw ParseError("", "config must be a JSON object");
    }
    if (o["problem"]->count()) root["problem"] = problem;
    if (!root.contains("problem")) throw UsageError("one of --config or --problem is required");
    if (o["out"]->count()) root["out"] = out_path;
    if (o["seed"]->count()) root["seed"] = seed;
    if (o["max-steps"]->count()) {
      if (!root.contains("stop")) root["stop"] = json::object();
      if (root["stop"].is_object()) root["stop"]["max_steps"] = max_steps;
    }
    if (certify) root["certify"] = true;
    if (o["variant"]->count()) {
      if (command == "compare")
        root["variants"] = variants;
      else if (variants.size() == 1)
        root["variant"] = variants.front();
      else
        throw UsageError("--variant takes a single tag except with compare");
    }

    const ExperimentSpec spec = parse_config(root.dump(), command != "validate");
    if (command == "solve") return cmd_solve(spec, out, err);
    if (command == "compare") return cmd_compare(spec, out, err);
    if (command == "validate") return cmd_validate(spec, out, err);
    return cmd_oracle(spec, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace hierfix
