#include "hierfix/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "hierfix/registry.hpp"

namespace hierfix {

using json = nlohmann::json;

namespace ops {
bool operator==(const Combo& a, const Combo& b) { return a.weights == b.weights && a.maps == b.maps; }
}  // namespace ops

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ---- JSON reading helpers --------------------------------------------------

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void check_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& path) {
  check_object(j, path);
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) throw ParseError(join(path, item.key()), "unknown key");
  }
}

const json& need(const json& j, std::string_view key, const std::string& path) {
  auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(join(path, key), "missing required key");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(path, "expected a finite number");
  return d;
}

std::uint64_t as_unsigned(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  throw ParseError(path, "expected a nonnegative integer");
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path, "expected a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ParseError(path, "expected a boolean");
  return v.get<bool>();
}

std::vector<double> as_doubles(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Vector as_vector(const json& v, const std::string& path) {
  auto values = as_doubles(v, path);
  if (values.empty()) throw ParseError(path, "expected a nonempty array of numbers");
  return Vector(std::move(values));
}

std::vector<Vector> as_vectors(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array of arrays");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_vector(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json to_json(const Vector& v) { return json(v.values()); }

json to_json(const std::vector<Vector>& vs) {
  json arr = json::array();
  for (const auto& v : vs) arr.push_back(to_json(v));
  return arr;
}

// ---- sets ------------------------------------------------------------------

ConvexSet parse_set(const json& j, const std::string& path) {
  check_object(j, path);
  const std::string kind = as_string(need(j, "kind", path), join(path, "kind"));
  try {
    if (kind == "box") {
      check_keys(j, {"kind", "lo", "hi"}, path);
      return ConvexSet::box(as_vector(need(j, "lo", path), join(path, "lo")),
                            as_vector(need(j, "hi", path), join(path, "hi")));
    }
    if (kind == "ball") {
      check_keys(j, {"kind", "center", "radius"}, path);
      return ConvexSet::ball(as_vector(need(j, "center", path), join(path, "center")),
                             as_number(need(j, "radius", path), join(path, "radius")));
    }
    if (kind == "halfspace" || kind == "hyperplane") {
      check_keys(j, {"kind", "a", "b"}, path);
      Vector a = as_vector(need(j, "a", path), join(path, "a"));
      const double b = as_number(need(j, "b", path), join(path, "b"));
      return kind == "halfspace" ? ConvexSet::halfspace(std::move(a), b)
                                 : ConvexSet::hyperplane(std::move(a), b);
    }
    if (kind == "affine") {
      check_keys(j, {"kind", "offset", "basis"}, path);
      std::vector<Vector> basis;
      if (j.contains("basis")) basis = as_vectors(j["basis"], join(path, "basis"));
      return ConvexSet::affine(as_vector(need(j, "offset", path), join(path, "offset")), std::move(basis));
    }
    if (kind == "point") {
      check_keys(j, {"kind", "value"}, path);
      return ConvexSet::point(as_vector(need(j, "value", path), join(path, "value")));
    }
    if (kind == "simplex" || kind == "whole") {
      check_keys(j, {"kind", "dimension"}, path);
      const auto d = as_unsigned(need(j, "dimension", path), join(path, "dimension"));
      return kind == "simplex" ? ConvexSet::simplex(d) : ConvexSet::whole(d);
    }
    if (kind == "intersection") {
      check_keys(j, {"kind", "members"}, path);
      const json& m = need(j, "members", path);
      if (!m.is_array()) throw ParseError(join(path, "members"), "expected an array of sets");
      std::vector<ConvexSet> members;
      for (std::size_t i = 0; i < m.size(); ++i)
        members.push_back(parse_set(m[i], join(path, "members") + "[" + std::to_string(i) + "]"));
      return ConvexSet::intersection(std::move(members));
    }
  } catch (const UsageError& e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(join(path, "kind"),
                   "unknown set kind '" + kind +
                       "' (expected box, ball, halfspace, hyperplane, affine, point, simplex, "
                       "whole or intersection)");
}

json emit_set(const ConvexSet& set) {
  return std::visit(
      overloaded{
          [](const sets::Box& s) { return json{{"kind", "box"}, {"lo", to_json(s.lo)}, {"hi", to_json(s.hi)}}; },
          [](const sets::Ball& s) {
            return json{{"kind", "ball"}, {"center", to_json(s.center)}, {"radius", s.radius}};
          },
          [](const sets::Halfspace& s) { return json{{"kind", "halfspace"}, {"a", to_json(s.a)}, {"b", s.b}}; },
          [](const sets::Hyperplane& s) { return json{{"kind", "hyperplane"}, {"a", to_json(s.a)}, {"b", s.b}}; },
          [](const sets::AffineSubspace& s) {
            return json{{"kind", "affine"}, {"offset", to_json(s.offset)}, {"basis", to_json(s.basis)}};
          },
          [](const sets::Simplex& s) { return json{{"kind", "simplex"}, {"dimension", s.dimension}}; },
          [](const sets::WholeSpace& s) { return json{{"kind", "whole"}, {"dimension", s.dimension}}; },
          [](const sets::Intersection& s) {
            json members = json::array();
            for (const auto& m : s.members) members.push_back(emit_set(m));
            return json{{"kind", "intersection"}, {"members", members}};
          },
      },
      set.variant());
}

// ---- operators, sequences, families ----------------------------------------

OperatorDef parse_operator(const json& j, const std::string& path) {
  check_object(j, path);
  const std::string kind = as_string(need(j, "kind", path), join(path, "kind"));
  if (kind == "affine_spd") {
    check_keys(j, {"kind", "A", "b"}, path);
    ops::AffineSpd def{as_vectors(need(j, "A", path), join(path, "A")), {}};
    def.b = j.contains("b") ? as_vector(j["b"], join(path, "b")) : Vector::zeros(def.rows.size());
    return {def};
  }
  if (kind == "projection") {
    check_keys(j, {"kind", "set"}, path);
    return {ops::Projection{parse_set(need(j, "set", path), join(path, "set"))}};
  }
  if (kind == "rotation") {
    check_keys(j, {"kind", "center", "angle"}, path);
    return {ops::Rotation{as_vector(need(j, "center", path), join(path, "center")),
                          as_number(need(j, "angle", path), join(path, "angle"))}};
  }
  if (kind == "identity") {
    check_keys(j, {"kind", "dimension"}, path);
    return {ops::Identity{as_unsigned(need(j, "dimension", path), join(path, "dimension"))}};
  }
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, path);
    return {ops::Constant{as_vector(need(j, "value", path), join(path, "value"))}};
  }
  if (kind == "combo") {
    check_keys(j, {"kind", "weights", "maps"}, path);
    ops::Combo def;
    def.weights = as_doubles(need(j, "weights", path), join(path, "weights"));
    const json& maps = need(j, "maps", path);
    if (!maps.is_array()) throw ParseError(join(path, "maps"), "expected an array of operators");
    for (std::size_t i = 0; i < maps.size(); ++i)
      def.maps.push_back(parse_operator(maps[i], join(path, "maps") + "[" + std::to_string(i) + "]"));
    return {def};
  }
  throw ParseError(join(path, "kind"),
                   "unknown operator kind '" + kind +
                       "' (expected affine_spd, projection, rotation, identity, constant or combo)");
}

json emit_operator(const OperatorDef& op) {
  return std::visit(
      overloaded{
          [](const ops::AffineSpd& d) {
            return json{{"kind", "affine_spd"}, {"A", to_json(d.rows)}, {"b", to_json(d.b)}};
          },
          [](const ops::Projection& d) { return json{{"kind", "projection"}, {"set", emit_set(d.set)}}; },
          [](const ops::Rotation& d) {
            return json{{"kind", "rotation"}, {"center", to_json(d.center)}, {"angle", d.angle}};
          },
          [](const ops::Identity& d) { return json{{"kind", "identity"}, {"dimension", d.dimension}}; },
          [](const ops::Constant& d) { return json{{"kind", "constant"}, {"value", to_json(d.value)}}; },
          [](const ops::Combo& d) {
            json maps = json::array();
            for (const auto& m : d.maps) maps.push_back(emit_operator(m));
            return json{{"kind", "combo"}, {"weights", d.weights}, {"maps", maps}};
          },
      },
      op.def);
}

SequenceDef parse_sequence(const json& j, const std::string& path) {
  check_object(j, path);
  SequenceDef s;
  s.kind = as_string(need(j, "kind", path), join(path, "kind"));
  if (s.kind == "zero") {
    check_keys(j, {"kind"}, path);
  } else if (s.kind == "power") {
    check_keys(j, {"kind", "scale", "exponent"}, path);
    if (j.contains("scale")) s.scale = as_number(j["scale"], join(path, "scale"));
    s.exponent = as_number(need(j, "exponent", path), join(path, "exponent"));
  } else if (s.kind == "table") {
    check_keys(j, {"kind", "values"}, path);
    s.values = as_doubles(need(j, "values", path), join(path, "values"));
  } else {
    throw ParseError(join(path, "kind"), "unknown sequence kind '" + s.kind + "' (expected zero, power or table)");
  }
  try {
    (void)s.build();
  } catch (const UsageError& e) {
    throw ParseError(path, e.what());
  }
  return s;
}

json emit_sequence(const SequenceDef& s) {
  if (s.kind == "power") return json{{"kind", "power"}, {"scale", s.scale}, {"exponent", s.exponent}};
  if (s.kind == "table") return json{{"kind", "table"}, {"values", s.values}};
  return json{{"kind", "zero"}};
}

FamilyDef parse_family(const json& j, const std::string& path) {
  check_object(j, path);
  FamilyDef f;
  f.kind = as_string(need(j, "kind", path), join(path, "kind"));
  if (f.kind == "constant_residual") {
    check_keys(j, {"kind", "base", "a"}, path);
    f.base = parse_operator(need(j, "base", path), join(path, "base"));
    if (j.contains("a")) f.sequence = parse_sequence(j["a"], join(path, "a"));
  } else if (f.kind == "perturbed") {
    check_keys(j, {"kind", "base", "c", "diameter"}, path);
    f.base = parse_operator(need(j, "base", path), join(path, "base"));
    f.sequence = parse_sequence(need(j, "c", path), join(path, "c"));
    if (j.contains("diameter")) f.diameter = as_number(j["diameter"], join(path, "diameter"));
  } else {
    throw ParseError(join(path, "kind"),
                     "unknown family kind '" + f.kind + "' (expected constant_residual or perturbed)");
  }
  return f;
}

json emit_family(const FamilyDef& f) {
  json j{{"kind", f.kind}, {"base", emit_operator(f.base)}};
  if (f.kind == "perturbed") {
    j["c"] = emit_sequence(f.sequence);
    if (f.diameter) j["diameter"] = *f.diameter;
  } else {
    j["a"] = emit_sequence(f.sequence);
  }
  return j;
}

ProblemDef parse_problem(const json& j, const std::string& path) {
  check_keys(j, {"name", "set", "S", "V", "F", "family", "region"}, path);
  ProblemDef p;
  p.name = j.contains("name") ? as_string(j["name"], join(path, "name")) : "inline";
  p.set = parse_set(need(j, "set", path), join(path, "set"));
  p.S = parse_operator(need(j, "S", path), join(path, "S"));
  p.V = parse_operator(need(j, "V", path), join(path, "V"));
  p.F = parse_operator(need(j, "F", path), join(path, "F"));
  p.family = parse_family(need(j, "family", path), join(path, "family"));
  if (j.contains("region")) p.region = parse_set(j["region"], join(path, "region"));
  return p;
}

json emit_problem(const ProblemDef& p) {
  json j{{"name", p.name},
         {"set", emit_set(p.set)},
         {"S", emit_operator(p.S)},
         {"V", emit_operator(p.V)},
         {"F", emit_operator(p.F)},
         {"family", emit_family(p.family)}};
  if (p.region) j["region"] = emit_set(*p.region);
  return j;
}

// ---- dimension bookkeeping -------------------------------------------------

std::optional<std::size_t> operator_dimension(const OperatorDef& op) {
  return std::visit(
      overloaded{
          [](const ops::AffineSpd& d) -> std::optional<std::size_t> { return d.rows.size(); },
          [](const ops::Projection& d) -> std::optional<std::size_t> { return d.set.dimension(); },
          [](const ops::Rotation& d) -> std::optional<std::size_t> { return d.center.size(); },
          [](const ops::Identity& d) -> std::optional<std::size_t> { return d.dimension; },
          [](const ops::Constant& d) -> std::optional<std::size_t> { return d.value.size(); },
          [](const ops::Combo& d) -> std::optional<std::size_t> {
            std::optional<std::size_t> dim;
            for (const auto& m : d.maps) {
              auto md = operator_dimension(m);
              if (dim && md && *dim != *md) throw UsageError("combo: member dimensions differ");
              if (md) dim = md;
            }
            return dim;
          },
      },
      op.def);
}

void require_operator_dim(const OperatorDef& op, std::size_t d, const char* role) {
  if (auto od = operator_dimension(op); od && *od != d)
    throw UsageError(std::string(role) + " has dimension " + std::to_string(*od) +
                     ", problem has dimension " + std::to_string(d));
}

}  // namespace

std::string OperatorDef::kind() const {
  return std::visit(overloaded{
                        [](const ops::AffineSpd&) { return "affine_spd"; },
                        [](const ops::Projection&) { return "projection"; },
                        [](const ops::Rotation&) { return "rotation"; },
                        [](const ops::Identity&) { return "identity"; },
                        [](const ops::Constant&) { return "constant"; },
                        [](const ops::Combo&) { return "combo"; },
                    },
                    def);
}

Sequence SequenceDef::build() const {
  if (kind == "zero") return [](std::size_t) { return 0.0; };
  if (kind == "power") {
    if (!(scale >= 0.0) || !(exponent >= 0.0))
      throw UsageError("power sequence: scale and exponent must be nonnegative");
    return [scale = scale, exponent = exponent](std::size_t n) {
      return scale * std::pow(static_cast<double>(n), -exponent);
    };
  }
  if (kind == "table") {
    if (values.empty()) throw UsageError("table sequence: no values");
    for (double v : values)
      if (!(v >= 0.0)) throw UsageError("table sequence: values must be nonnegative");
    return [values = values](std::size_t n) { return values[std::min(n, values.size()) - 1]; };
  }
  throw UsageError("unknown sequence kind '" + kind + "'");
}

Schedule ScheduleDef::build_unchecked() const {
  if (kind == "power") return power_schedule_unchecked(s, t);
  return build();
}

Schedule ScheduleDef::build() const {
  if (kind == "power") return power_schedule(s, t);
  if (kind == "table") return table_schedule(alpha, beta);
  throw UsageError("unknown schedule kind '" + kind + "'");
}

NonexpansiveMap build_nonexpansive(const OperatorDef& op) {
  return std::visit(
      overloaded{
          [](const ops::AffineSpd&) -> NonexpansiveMap {
            throw UsageError("affine_spd operators cannot be used as nonexpansive maps");
          },
          [](const ops::Projection& d) { return projection_map(d.set); },
          [](const ops::Rotation& d) { return rotation_map(d.center, d.angle); },
          [](const ops::Identity& d) { return identity_map(d.dimension); },
          [](const ops::Constant& d) { return constant_map(d.value); },
          [](const ops::Combo& d) {
            std::vector<NonexpansiveMap> maps;
            for (const auto& m : d.maps) maps.push_back(build_nonexpansive(m));
            return convex_combination(d.weights, std::move(maps));
          },
      },
      op.def);
}

LipschitzMap build_lipschitz(const OperatorDef& op, std::size_t dim) {
  require_operator_dim(op, dim, "V");
  if (const auto* d = std::get_if<ops::AffineSpd>(&op.def)) return as_lipschitz(affine_spd(d->rows, d->b));
  if (const auto* d = std::get_if<ops::Constant>(&op.def)) {
    if (norm(d->value) == 0.0) return zero_lipschitz(dim);
    return constant_lipschitz(d->value);
  }
  return as_lipschitz(build_nonexpansive(op));
}

StronglyMonotoneOp build_strongly_monotone(const OperatorDef& op, std::size_t dim) {
  require_operator_dim(op, dim, "F");
  if (const auto* d = std::get_if<ops::AffineSpd>(&op.def)) return affine_spd(d->rows, d->b);
  if (std::holds_alternative<ops::Identity>(op.def)) return identity_operator(dim);
  throw UsageError("F must be strongly monotone: use affine_spd or identity, not " + op.kind());
}

Constants resolve_constants(const ProblemDef& def, const ConstantsDef& c) {
  const std::size_t d = def.set.dimension();
  const double gamma = c.gamma ? *c.gamma : build_lipschitz(def.V, d).gamma;
  double lip = 0.0, eta = 0.0;
  if (!c.lip || !c.eta) {
    const StronglyMonotoneOp F = build_strongly_monotone(def.F, d);
    lip = F.lip;
    eta = F.eta;
  }
  if (c.lip) lip = *c.lip;
  if (c.eta) eta = *c.eta;
  return Constants::make(c.mu, c.rho, gamma, lip, eta);
}

NearlyNonexpansiveFamily build_family(const ProblemDef& def) {
  require_operator_dim(def.family.base, def.set.dimension(), "family base");
  NonexpansiveMap base = build_nonexpansive(def.family.base);
  const Sequence seq = def.family.sequence.build();
  if (def.family.kind == "perturbed") {
    const double diameter =
        def.family.diameter ? *def.family.diameter : (def.region ? *def.region : def.set).diameter();
    return perturbed_family(std::move(base), seq, diameter);
  }
  if (def.family.kind == "constant_residual") return constant_residual_family(std::move(base), seq);
  throw UsageError("unknown family kind '" + def.family.kind + "'");
}

AssembledProblem assemble(const ProblemDef& def, const ConstantsDef& cdef) {
  const std::size_t d = def.set.dimension();
  require_operator_dim(def.S, d, "S");
  require_operator_dim(def.family.base, d, "family base");
  if (def.region && !def.region->is_bounded()) throw UsageError("region must be bounded");

  NonexpansiveMap S = build_nonexpansive(def.S);
  LipschitzMap V = build_lipschitz(def.V, d);
  StronglyMonotoneOp F = build_strongly_monotone(def.F, d);

  NearlyNonexpansiveFamily family = build_family(def);

  std::optional<CombinationMembers> combo;
  if (const auto* c = std::get_if<ops::Combo>(&def.family.base.def)) {
    CombinationMembers members{c->weights, {}};
    for (const auto& m : c->maps) members.maps.push_back(build_nonexpansive(m));
    combo = std::move(members);
  }

  ProblemSpec prob = ProblemSpec::make(def.name, def.set, std::move(S), std::move(V), std::move(F),
                                       std::move(family), resolve_constants(def, cdef), def.region);
  return {std::move(prob), std::move(combo)};
}

ExperimentSpec parse_config(std::string_view text, bool validate) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  check_keys(root,
             {"problem", "schedule", "constants", "variant", "variants", "x1", "stop", "certify", "out",
              "seed", "samples", "horizon"},
             "");

  ExperimentSpec spec;
  const json& problem = need(root, "problem", "");
  if (problem.is_string()) {
    try {
      spec = default_experiment(problem.get<std::string>());
    } catch (const UsageError& e) {
      throw ParseError("problem", e.what());
    }
  } else if (problem.is_object()) {
    spec.problem = parse_problem(problem, "problem");
  } else {
    throw ParseError("problem", "expected a registry name or an inline problem object");
  }

  if (root.contains("schedule")) {
    const json& j = root["schedule"];
    check_object(j, "schedule");
    ScheduleDef s;
    s.kind = as_string(need(j, "kind", "schedule"), "schedule.kind");
    if (s.kind == "power") {
      check_keys(j, {"kind", "s", "t"}, "schedule");
      s.s = as_number(need(j, "s", "schedule"), "schedule.s");
      s.t = as_number(need(j, "t", "schedule"), "schedule.t");
    } else if (s.kind == "table") {
      check_keys(j, {"kind", "alpha", "beta"}, "schedule");
      s.alpha = as_doubles(need(j, "alpha", "schedule"), "schedule.alpha");
      s.beta = as_doubles(need(j, "beta", "schedule"), "schedule.beta");
    } else {
      throw ParseError("schedule.kind", "unknown schedule kind '" + s.kind + "' (expected power or table)");
    }
    spec.schedule = s;
  }

  if (root.contains("constants")) {
    const json& j = root["constants"];
    check_keys(j, {"mu", "rho", "gamma", "L", "eta"}, "constants");
    if (j.contains("mu")) spec.constants.mu = as_number(j["mu"], "constants.mu");
    if (j.contains("rho")) spec.constants.rho = as_number(j["rho"], "constants.rho");
    if (j.contains("gamma")) spec.constants.gamma = as_number(j["gamma"], "constants.gamma");
    if (j.contains("L")) spec.constants.lip = as_number(j["L"], "constants.L");
    if (j.contains("eta")) spec.constants.eta = as_number(j["eta"], "constants.eta");
  }

  try {
    if (root.contains("variant")) spec.variant = parse_variant(as_string(root["variant"], "variant"));
    if (root.contains("variants")) {
      const json& j = root["variants"];
      if (!j.is_array()) throw ParseError("variants", "expected an array of variant names");
      spec.variants.clear();
      for (std::size_t i = 0; i < j.size(); ++i)
        spec.variants.push_back(parse_variant(as_string(j[i], "variants[" + std::to_string(i) + "]")));
    }
  } catch (const UsageError& e) {
    throw ParseError("variant", e.what());
  }

  if (root.contains("x1")) spec.x1 = as_vector(root["x1"], "x1");
  if (root.contains("stop")) {
    const json& j = root["stop"];
    check_keys(j, {"max_steps", "step_tol", "residual_tol"}, "stop");
    if (j.contains("max_steps")) spec.stop.max_steps = as_unsigned(j["max_steps"], "stop.max_steps");
    if (j.contains("step_tol")) spec.stop.step_tol = as_number(j["step_tol"], "stop.step_tol");
    if (j.contains("residual_tol")) spec.stop.residual_tol = as_number(j["residual_tol"], "stop.residual_tol");
  }
  if (root.contains("certify")) spec.certify = as_bool(root["certify"], "certify");
  if (root.contains("out")) spec.out = as_string(root["out"], "out");
  if (root.contains("seed")) spec.seed = as_unsigned(root["seed"], "seed");
  if (root.contains("samples")) {
    spec.samples = as_unsigned(root["samples"], "samples");
    if (spec.samples == 0) throw ParseError("samples", "must be >= 1");
  }
  if (root.contains("horizon")) {
    spec.horizon = as_unsigned(root["horizon"], "horizon");
    if (spec.horizon < 100) throw ParseError("horizon", "must be >= 100");
  }

  if (!validate) {
    try {
      (void)resolve_constants(spec.problem, spec.constants);
      (void)build_family(spec.problem);
      (void)spec.schedule.build_unchecked();
    } catch (const UsageError& e) {
      throw ParseError("problem", e.what());
    }
    return spec;
  }

  // Resolution checks: constants first so their message names the inequality.
  Constants resolved;
  try {
    resolved = resolve_constants(spec.problem, spec.constants);
  } catch (const UsageError& e) {
    throw ParseError("problem", e.what());
  }
  const ConstantsReport report = validate_constants(resolved);
  if (!report.ok()) {
    std::string msg = "constants: ";
    for (std::size_t i = 0; i < report.failures.size(); ++i) msg += (i ? "; " : "") + report.failures[i];
    throw ValidationError(msg);
  }
  try {
    (void)spec.schedule.build();
  } catch (const UsageError& e) {
    throw ValidationError(e.what());
  }
  try {
    (void)assemble(spec.problem, spec.constants);
  } catch (const UsageError& e) {
    throw ParseError("problem", e.what());
  }
  if (spec.x1 && spec.x1->size() != spec.problem.set.dimension())
    throw ParseError("x1", "dimension " + std::to_string(spec.x1->size()) + " does not match the problem");
  return spec;
}

ExperimentSpec parse_config_file(const std::filesystem::path& path, bool validate) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), validate);
}

std::string emit_config(const ExperimentSpec& spec) {
  json root;
  root["problem"] = emit_problem(spec.problem);
  if (spec.schedule.kind == "table")
    root["schedule"] = json{{"kind", "table"}, {"alpha", spec.schedule.alpha}, {"beta", spec.schedule.beta}};
  else
    root["schedule"] = json{{"kind", "power"}, {"s", spec.schedule.s}, {"t", spec.schedule.t}};
  json c{{"mu", spec.constants.mu}, {"rho", spec.constants.rho}};
  if (spec.constants.gamma) c["gamma"] = *spec.constants.gamma;
  if (spec.constants.lip) c["L"] = *spec.constants.lip;
  if (spec.constants.eta) c["eta"] = *spec.constants.eta;
  root["constants"] = c;
  root["variant"] = to_string(spec.variant);
  if (!spec.variants.empty()) {
    json v = json::array();
    for (Variant x : spec.variants) v.push_back(to_string(x));
    root["variants"] = v;
  }
  if (spec.x1) root["x1"] = to_json(*spec.x1);
  root["stop"] = json{{"max_steps", spec.stop.max_steps},
                      {"step_tol", spec.stop.step_tol},
                      {"residual_tol", spec.stop.residual_tol}};
  root["certify"] = spec.certify;
  root["out"] = spec.out;
  root["seed"] = spec.seed;
  root["samples"] = spec.samples;
  root["horizon"] = spec.horizon;
  return root.dump(2);
}

}  // namespace hierfix
