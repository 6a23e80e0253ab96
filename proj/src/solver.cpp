#include "hierfix/solver.hpp"

#include <cmath>

namespace hierfix {

namespace {

Sequence zero_sequence() {
  return [](std::size_t) { return 0.0; };
}

NonexpansiveMap with_declared_fixed_set(NonexpansiveMap map, const ConvexSet& fallback) {
  if (!map.fixed_set_hint) map.fixed_set_hint = fallback;
  return map;
}

}  // namespace

ProblemSpec ProblemSpec::make(std::string name, ConvexSet set_c, NonexpansiveMap S, LipschitzMap V,
                              StronglyMonotoneOp F, NearlyNonexpansiveFamily family,
                              Constants constants, std::optional<ConvexSet> region) {
  const ConstantsReport report = validate_constants(constants);
  if (!report.ok()) {
    std::string msg = "problem '" + name + "': ";
    for (std::size_t i = 0; i < report.failures.size(); ++i)
      msg += (i ? "; " : "") + report.failures[i];
    throw ValidationError(msg);
  }
  constants.nu = report.nu;

  const std::size_t d = set_c.dimension();
  if (family.common_fixed_set.dimension() != d)
    throw UsageError("problem '" + name + "': common fixed set dimension differs from C");
  if (region && region->dimension() != d)
    throw UsageError("problem '" + name + "': sampling region dimension differs from C");

  Vector witness = family.common_fixed_set.project(Vector::zeros(d));
  if (!family.common_fixed_set.contains(witness, 1e-8 * (1.0 + norm(witness))))
    throw ProjectionError("problem '" + name + "': common fixed set appears to be empty");

  return ProblemSpec{std::move(name),     std::move(set_c),  std::move(S),
                     std::move(V),        std::move(F),      std::move(family),
                     constants,           std::move(region), std::move(witness)};
}

const ConvexSet& ProblemSpec::sampling_region() const {
  if (region) return *region;
  if (std::holds_alternative<sets::Box>(set_c.variant()) ||
      std::holds_alternative<sets::Ball>(set_c.variant()))
    return set_c;
  throw UsageError("problem '" + name +
                   "': sampling region unbounded and no bounding box configured");
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Main: return "MAIN";
    case Variant::Sahu: return "SAHU";
    case Variant::WangXu: return "WANG_XU";
    case Variant::Ceng: return "CENG";
    case Variant::ConvexCombo: return "CONVEX_COMBO";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  for (Variant v : {Variant::Main, Variant::Sahu, Variant::WangXu, Variant::Ceng, Variant::ConvexCombo})
    if (to_string(v) == name) return v;
  throw UsageError("unknown variant '" + name +
                   "' (expected MAIN, SAHU, WANG_XU, CENG or CONVEX_COMBO)");
}

SolverState step(const SolverState& state, const ProblemSpec& prob, const Schedule& sch,
                 Variant variant) {
  const std::size_t n = state.n;
  const double alpha = sch.alpha(n);
  const double beta = sch.beta(n);
  const double mu = prob.constants.mu;
  const double rho = prob.constants.rho;
  const Vector& x = state.x;

  Vector y;
  if (variant == Variant::Sahu || variant == Variant::Ceng) {
    y = x;
  } else {
    Vector mix = beta * prob.S(x);
    mix.axpy(1.0 - beta, x);
    if (!mix.all_finite()) throw DivergenceError(n, "non-finite inner iterate y_n");
    y = prob.set_c.project(mix);
  }

  const Vector ty = prob.family(n, y);
  Vector update = (alpha * rho) * prob.V(x);
  update += ty;
  update.axpy(-alpha * mu, prob.F(ty));
  if (!update.all_finite()) throw DivergenceError(n, "non-finite update");

  return SolverState{n + 1, prob.set_c.project(update), std::move(y)};
}

SolverState initial_state(const ProblemSpec& prob, const std::optional<Vector>& x1) {
  const Vector start = x1.value_or(Vector::zeros(prob.dimension()));
  if (start.size() != prob.dimension())
    throw UsageError("initial point has dimension " + std::to_string(start.size()) + ", expected " +
                     std::to_string(prob.dimension()));
  if (!start.all_finite()) throw UsageError("initial point has non-finite components");
  Vector x = prob.set_c.project(start);
  return SolverState{1, x, x};
}

RunResult run(const ProblemSpec& prob, const Schedule& sch, const std::optional<Vector>& x1,
              const StoppingRule& stop, Variant variant, const TraceHook& hook) {
  RunResult result;
  SolverState state = initial_state(prob, x1);
  const NonexpansiveMap& limit = prob.family.limit_map;

  std::optional<std::pair<SolverState, TraceRow>> unrecorded;
  for (std::size_t k = 0; k < stop.max_steps; ++k) {
    SolverState next;
    try {
      next = step(state, prob, sch, variant);
    } catch (DivergenceError& e) {
      e.set_partial_trace(std::move(result.trace));
      throw;
    }

    TraceRow row;
    row.n = state.n;
    row.alpha = sch.alpha(state.n);
    row.beta = (variant == Variant::Sahu || variant == Variant::Ceng) ? 0.0 : sch.beta(state.n);
    row.a_n = prob.family.a_seq(state.n);
    row.step_norm = distance(next.x, state.x);
    row.fp_residual = distance(next.x, limit(next.x));
    ++result.steps;

    const bool done = row.step_norm < stop.step_tol && row.fp_residual < stop.residual_tol;
    if (IterationTrace::records(row.n)) {
      if (hook) hook(next, row);
      result.trace.rows.push_back(row);
      unrecorded.reset();
    } else {
      unrecorded.emplace(next, row);
    }
    state = std::move(next);
    if (done) {
      result.converged = true;
      break;
    }
  }
  if (unrecorded) {
    if (hook) hook(unrecorded->first, unrecorded->second);
    result.trace.rows.push_back(unrecorded->second);
  }
  result.x = std::move(state.x);
  return result;
}

VariantSetup make_variant(Variant tag, const VariantInputs& in) {
  ProblemSpec prob = in.base;
  Schedule sch = in.schedule;
  const std::size_t d = prob.dimension();
  const NonexpansiveMap limit =
      with_declared_fixed_set(prob.family.limit_map, prob.family.common_fixed_set);

  switch (tag) {
    case Variant::Main:
      break;
    case Variant::Sahu:
      prob.S = identity_map(d);
      break;
    case Variant::WangXu:
      prob.family = constant_residual_family(limit, zero_sequence());
      break;
    case Variant::Ceng:
      prob.S = identity_map(d);
      prob.family = constant_residual_family(limit, zero_sequence());
      sch = with_zero_beta(std::move(sch));
      break;
    case Variant::ConvexCombo: {
      if (!in.combo || in.combo->maps.empty())
        throw UsageError(
            "CONVEX_COMBO requires weights and nonexpansive maps T_1..T_N with declared fixed sets");
      NonexpansiveMap combo = convex_combination(in.combo->weights, in.combo->maps);
      if (!combo.fixed_set_hint)
        throw UsageError("CONVEX_COMBO: every member map needs a declared fixed set");
      prob.family = constant_residual_family(std::move(combo), zero_sequence());
      break;
    }
  }
  prob = ProblemSpec::make(prob.name, prob.set_c, prob.S, prob.V, prob.F, prob.family,
                           prob.constants, prob.region);
  return {std::move(prob), std::move(sch), tag};
}

}  // namespace hierfix
