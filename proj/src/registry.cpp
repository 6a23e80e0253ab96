#include "hierfix/registry.hpp"

#include <cmath>
#include <numbers>

namespace hierfix {

namespace {

ConvexSet desk_box() { return ConvexSet::cube(2, -10.0, 10.0); }

OperatorDef zero_op() { return {ops::Constant{Vector{0.0, 0.0}}}; }

OperatorDef line_projection() { return {ops::Projection{ConvexSet::hyperplane(Vector{1.0, 1.0}, 2.0)}}; }

OperatorDef ball_projection() { return {ops::Projection{ConvexSet::ball(Vector{0.0, 0.0}, 3.0)}}; }

SequenceDef inverse_square() { return {"power", 1.0, 2.0, {}}; }

// With diminishing alpha_n the step and fixed-point residuals shrink roughly
// like alpha_n, so each entry carries tolerances reachable within max_steps.
RegistryEntry p1() {
  RegistryEntry e;
  e.problem = ProblemDef{"P1",
                         desk_box(),
                         zero_op(),
                         zero_op(),
                         {ops::Identity{2}},
                         FamilyDef{"constant_residual", line_projection(), inverse_square(), std::nullopt},
                         desk_box()};
  e.schedule = ScheduleDef{"power", 0.9, 1.8, {}, {}};
  e.constants = ConstantsDef{1.0, 0.0, std::nullopt, std::nullopt, std::nullopt};
  e.stop = StoppingRule{200000, 1e-4, 1e-4};
  e.x1 = Vector{5.0, -3.0};
  e.summary = "min-norm point of the line x1+x2=2 (limit (1,1))";
  return e;
}

RegistryEntry p2() {
  RegistryEntry e;
  e.problem = ProblemDef{
      "P2",
      desk_box(),
      ball_projection(),
      {ops::Constant{Vector{1.0, 0.0}}},
      {ops::AffineSpd{{Vector{1.0, 0.0}, Vector{0.0, 2.0}}, Vector{0.0, 0.0}}},
      FamilyDef{"constant_residual", line_projection(), inverse_square(), std::nullopt},
      desk_box()};
  e.schedule = ScheduleDef{"power", 0.7, 1.4, {}, {}};
  e.constants = ConstantsDef{0.25, 1.0, std::nullopt, std::nullopt, std::nullopt};
  e.stop = StoppingRule{200000, 1e-4, 1e-4};
  e.summary = "affine strongly monotone VI over the line x1+x2=2";
  return e;
}

RegistryEntry p3() {
  RegistryEntry e;
  e.problem = ProblemDef{"P3",
                         desk_box(),
                         ball_projection(),
                         zero_op(),
                         {ops::Identity{2}},
                         FamilyDef{"perturbed",
                                   {ops::Rotation{Vector{0.5, 0.5}, std::numbers::pi / 2.0}},
                                   inverse_square(),
                                   20.0 * std::numbers::sqrt2},
                         desk_box()};
  e.schedule = ScheduleDef{"power", 0.9, 1.8, {}, {}};
  e.constants = ConstantsDef{0.5, 0.0, std::nullopt, std::nullopt, std::nullopt};
  e.stop = StoppingRule{200000, 1e-4, 1e-4};
  e.x1 = Vector{5.0, -3.0};
  e.summary = "quarter-turn rotation about (0.5,0.5) with a perturbed nearly nonexpansive family";
  return e;
}

RegistryEntry p4() {
  RegistryEntry e;
  ops::Combo combo{{0.5, 0.5},
                   {OperatorDef{ops::Projection{ConvexSet::hyperplane(Vector{1.0, 0.0}, 0.0)}},
                    OperatorDef{ops::Projection{ConvexSet::hyperplane(Vector{0.0, 1.0}, 0.0)}}}};
  e.problem = ProblemDef{"P4",
                         desk_box(),
                         ball_projection(),
                         zero_op(),
                         {ops::Identity{2}},
                         FamilyDef{"constant_residual", {combo}, SequenceDef{}, std::nullopt},
                         desk_box()};
  e.schedule = ScheduleDef{"power", 0.9, 1.8, {}, {}};
  e.constants = ConstantsDef{1.0, 0.0, std::nullopt, std::nullopt, std::nullopt};
  e.stop = StoppingRule{200000, 1e-4, 1e-4};
  e.x1 = Vector{5.0, -3.0};
  e.summary = "average of projections onto the coordinate axes (limit (0,0))";
  return e;
}

}  // namespace

const std::vector<RegistryEntry>& problem_registry() {
  static const std::vector<RegistryEntry> entries{p1(), p2(), p3(), p4()};
  return entries;
}

const RegistryEntry& registry_entry(const std::string& name) {
  std::string known;
  for (const auto& e : problem_registry()) {
    if (e.problem.name == name) return e;
    known += (known.empty() ? "" : ", ") + e.problem.name;
  }
  throw UsageError("unknown problem '" + name + "' (known: " + known + ")");
}

ExperimentSpec default_experiment(const std::string& name) {
  const RegistryEntry& e = registry_entry(name);
  ExperimentSpec spec;
  spec.problem = e.problem;
  spec.schedule = e.schedule;
  spec.constants = e.constants;
  spec.stop = e.stop;
  spec.x1 = e.x1;
  return spec;
}

}  // namespace hierfix
