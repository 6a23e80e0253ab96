#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hierfix/convex_set.hpp"
#include "hierfix/errors.hpp"
#include "hierfix/operators.hpp"
#include "hierfix/schedule.hpp"

namespace hierfix {

/// One instance of the hierarchical fixed-point problem: find x* in
/// F = cap Fix(T_n) solving <(rho V - mu F) x*, x - x*> <= 0 for all x in F.
struct ProblemSpec {
  std::string name;
  ConvexSet set_c;
  NonexpansiveMap S;
  LipschitzMap V;
  StronglyMonotoneOp F;
  NearlyNonexpansiveFamily family;
  Constants constants;
  /// Bounded box/ball used to sample F and to estimate deviations.
  std::optional<ConvexSet> region;
  /// A point of the common fixed set (projection of the origin).
  Vector witness;

  /// Validates constants (ValidationError quoting the violated inequality)
  /// and computes the witness of F (ProjectionError if F looks empty).
  static ProblemSpec make(std::string name, ConvexSet set_c, NonexpansiveMap S, LipschitzMap V,
                          StronglyMonotoneOp F, NearlyNonexpansiveFamily family, Constants constants,
                          std::optional<ConvexSet> region = std::nullopt);

  std::size_t dimension() const { return set_c.dimension(); }
  /// `region` if set, otherwise C when C is a bounded box or ball.
  const ConvexSet& sampling_region() const;
};

/// Which iteration to run. Main is the two-stage projection scheme; the others
/// are its reductions. Sahu and Ceng skip the inner y-stage (y_n = x_n).
enum class Variant { Main, Sahu, WangXu, Ceng, ConvexCombo };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct SolverState {
  std::size_t n = 1;
  Vector x;
  Vector y;
};

struct StoppingRule {
  std::size_t max_steps = 200000;
  double step_tol = 1e-10;      // on |x_{n+1} - x_n|
  double residual_tol = 1e-8;   // on |x_n - T x_n|

  friend bool operator==(const StoppingRule&, const StoppingRule&) = default;
};

struct TraceRow {
  std::size_t n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double a_n = 0.0;
  double step_norm = 0.0;    // |x_{n+1} - x_n|
  double fp_residual = 0.0;  // |x_{n+1} - T x_{n+1}|
  std::optional<double> vi_residual;
  std::optional<double> dist_oracle;
};

/// Rows for every step up to n = 1000, then every 10th step; the last
/// executed step is always recorded.
struct IterationTrace {
  std::vector<TraceRow> rows;

  static bool records(std::size_t n) { return n <= 1000 || n % 10 == 0; }
};

/// Called for each recorded row, after the step, with the new state.
using TraceHook = std::function<void(const SolverState&, TraceRow&)>;

/// Non-finite iterate. Carries the step index and the trace up to the failure.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : Error("divergence at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }
  const IterationTrace& partial_trace() const noexcept { return partial_; }
  void set_partial_trace(IterationTrace t) { partial_ = std::move(t); }

 private:
  std::size_t step_;
  IterationTrace partial_;
};

/// One iteration:
///   y_n     = P_C[beta_n S x_n + (1 - beta_n) x_n]     (y_n = x_n for Sahu/Ceng)
///   x_{n+1} = P_C[alpha_n rho V x_n + (I - alpha_n mu F) T_n y_n]
SolverState step(const SolverState& state, const ProblemSpec& prob, const Schedule& sch,
                 Variant variant = Variant::Main);

struct RunResult {
  Vector x;
  IterationTrace trace;
  bool converged = false;
  std::size_t steps = 0;
};

/// Initial point: P_C(x1), or P_C(0) when x1 is absent.
SolverState initial_state(const ProblemSpec& prob, const std::optional<Vector>& x1);

RunResult run(const ProblemSpec& prob, const Schedule& sch, const std::optional<Vector>& x1,
              const StoppingRule& stop, Variant variant = Variant::Main, const TraceHook& hook = {});

/// Extra inputs for the convex-combination reduction.
struct CombinationMembers {
  std::vector<double> weights;
  std::vector<NonexpansiveMap> maps;
};

struct VariantInputs {
  ProblemSpec base;
  Schedule schedule;
  std::optional<CombinationMembers> combo;
};

struct VariantSetup {
  ProblemSpec problem;
  Schedule schedule;
  Variant variant;
};

/// Specialize a problem to one of the reductions:
///   Sahu:        S := I
///   WangXu:      T_n := T (the limit map), a_n := 0
///   Ceng:        S := I, beta := 0, T_n := T, a_n := 0
///   ConvexCombo: T_n := sum_i w_i T_i, a_n := 0
VariantSetup make_variant(Variant tag, const VariantInputs& inputs);

}  // namespace hierfix
