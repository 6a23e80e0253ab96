#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hierfix/convex_set.hpp"
#include "hierfix/operators.hpp"
#include "hierfix/schedule.hpp"
#include "hierfix/solver.hpp"

namespace hierfix {

// Declarative descriptions of problems, as read from and written to experiment
// configs. They compare by value so configs round-trip exactly; `assemble`
// turns them into executable ProblemSpecs.

/// zero | power (scale * n^-exponent) | table (last value held)
struct SequenceDef {
  std::string kind = "zero";
  double scale = 1.0;
  double exponent = 0.0;
  std::vector<double> values;

  Sequence build() const;
  friend bool operator==(const SequenceDef&, const SequenceDef&) = default;
};

struct OperatorDef;

namespace ops {
struct AffineSpd {
  std::vector<Vector> rows;
  Vector b;
  friend bool operator==(const AffineSpd&, const AffineSpd&) = default;
};
struct Projection {
  ConvexSet set = ConvexSet::whole(1);
  friend bool operator==(const Projection&, const Projection&) = default;
};
struct Rotation {
  Vector center;
  double angle = 0.0;
  friend bool operator==(const Rotation&, const Rotation&) = default;
};
struct Identity {
  std::size_t dimension = 1;
  friend bool operator==(const Identity&, const Identity&) = default;
};
struct Constant {
  Vector value;
  friend bool operator==(const Constant&, const Constant&) = default;
};
struct Combo {
  std::vector<double> weights;
  std::vector<OperatorDef> maps;
  friend bool operator==(const Combo&, const Combo&);
};
}  // namespace ops

struct OperatorDef {
  std::variant<ops::AffineSpd, ops::Projection, ops::Rotation, ops::Identity, ops::Constant, ops::Combo>
      def;

  std::string kind() const;
  friend bool operator==(const OperatorDef&, const OperatorDef&) = default;
};

/// Role-specific builders; each throws UsageError when the kind cannot play
/// the role (e.g. affine_spd as a nonexpansive map).
NonexpansiveMap build_nonexpansive(const OperatorDef& def);
LipschitzMap build_lipschitz(const OperatorDef& def, std::size_t dim);
StronglyMonotoneOp build_strongly_monotone(const OperatorDef& def, std::size_t dim);

/// constant_residual (T_n = base, slack a_n = sequence) or
/// perturbed (T_n = base + c_n (I - p), c_n = sequence).
struct FamilyDef {
  std::string kind = "constant_residual";
  OperatorDef base;
  SequenceDef sequence;
  std::optional<double> diameter;  // perturbed only; defaults to the region's diameter

  friend bool operator==(const FamilyDef&, const FamilyDef&) = default;
};

struct ProblemDef {
  std::string name;
  ConvexSet set = ConvexSet::whole(1);
  OperatorDef S;
  OperatorDef V;
  OperatorDef F;
  FamilyDef family;
  std::optional<ConvexSet> region;

  friend bool operator==(const ProblemDef&, const ProblemDef&) = default;
};

struct ScheduleDef {
  std::string kind = "power";  // power | table
  double s = 0.9;
  double t = 1.8;
  std::vector<double> alpha;
  std::vector<double> beta;

  Schedule build() const;
  /// Power schedules are built without the admissibility checks.
  Schedule build_unchecked() const;
  friend bool operator==(const ScheduleDef&, const ScheduleDef&) = default;
};

/// mu and rho are required; gamma, L and eta default to the constants
/// declared by V and F.
struct ConstantsDef {
  double mu = 1.0;
  double rho = 0.0;
  std::optional<double> gamma;
  std::optional<double> lip;
  std::optional<double> eta;

  friend bool operator==(const ConstantsDef&, const ConstantsDef&) = default;
};

struct ExperimentSpec {
  ProblemDef problem;
  ScheduleDef schedule;
  ConstantsDef constants;
  Variant variant = Variant::Main;
  std::vector<Variant> variants;  // for compare; empty = every applicable variant
  std::optional<Vector> x1;
  StoppingRule stop;
  bool certify = false;
  std::string out;
  std::uint64_t seed = 20240601;
  std::size_t samples = 1000;
  std::size_t horizon = 10000;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

Constants resolve_constants(const ProblemDef& def, const ConstantsDef& c);

struct AssembledProblem {
  ProblemSpec problem;
  std::optional<CombinationMembers> combo;  // when the family base is a convex combination
};

NearlyNonexpansiveFamily build_family(const ProblemDef& def);

AssembledProblem assemble(const ProblemDef& def, const ConstantsDef& constants);

/// Parse a JSON experiment config. Registry problems are referenced by name
/// ("problem": "P1") and expanded; their defaults fill absent keys. Unknown
/// keys are rejected (ParseError); constants and schedules are validated
/// (ValidationError quoting the violated condition). With `validate` false
/// the constants and schedule checks are skipped so they can be reported.
ExperimentSpec parse_config(std::string_view text, bool validate = true);
ExperimentSpec parse_config_file(const std::filesystem::path& path, bool validate = true);

/// Fully resolved JSON; parse_config(emit_config(s)) == s.
std::string emit_config(const ExperimentSpec& spec);

}  // namespace hierfix
