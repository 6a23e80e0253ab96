#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hierfix/config.hpp"

namespace hierfix {

/// A named built-in problem with its recommended run settings.
struct RegistryEntry {
  ProblemDef problem;
  ScheduleDef schedule;
  ConstantsDef constants;
  StoppingRule stop;
  std::optional<Vector> x1;
  std::string summary;
};

/// P1 min-norm point on a line, P2 affine-F variational inequality,
/// P3 rotation with a perturbed family, P4 convex combination of projections.
const std::vector<RegistryEntry>& problem_registry();
/// Throws UsageError listing the known names.
const RegistryEntry& registry_entry(const std::string& name);

/// Experiment with every setting at the entry's defaults.
ExperimentSpec default_experiment(const std::string& name);

}  // namespace hierfix
