#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hierfix/convex_set.hpp"
#include "hierfix/vector.hpp"

namespace hierfix {

using MapFn = std::function<Vector(const Vector&)>;
using IndexedMapFn = std::function<Vector(std::size_t, const Vector&)>;
/// A real sequence indexed from n = 1.
using Sequence = std::function<double(std::size_t)>;

/// gamma-Lipschitz map (the viscosity term V).
struct LipschitzMap {
  MapFn eval;
  double gamma = 0.0;
  std::string kind = "custom";

  Vector operator()(const Vector& x) const { return eval(x); }
};

/// L-Lipschitz, eta-strongly monotone operator (F).
struct StronglyMonotoneOp {
  MapFn eval;
  double lip = 1.0;
  double eta = 1.0;
  std::string kind = "custom";

  Vector operator()(const Vector& x) const { return eval(x); }
};

/// Nonexpansive map with its fixed-point set, when known.
struct NonexpansiveMap {
  MapFn eval;
  std::optional<ConvexSet> fixed_set_hint;
  std::string kind = "custom";

  Vector operator()(const Vector& x) const { return eval(x); }
};

/// Sequence {T_n} with |T_n x - T_n y| <= |x - y| + a_n, pointwise limit T and
/// common fixed set F = cap Fix(T_n) = Fix(T).
struct NearlyNonexpansiveFamily {
  IndexedMapFn eval_n;
  Sequence a_seq;
  NonexpansiveMap limit_map;
  ConvexSet common_fixed_set;

  Vector operator()(std::size_t n, const Vector& x) const { return eval_n(n, x); }
};

/// Step-size constants of the iteration. nu is derived; NaN when mu is outside
/// (0, 2 eta / L^2).
struct Constants {
  double mu = 0.0;
  double rho = 0.0;
  double gamma = 0.0;
  double lip = 1.0;
  double eta = 1.0;
  double nu = 0.0;

  static Constants make(double mu, double rho, double gamma, double lip, double eta);
};

struct ConstantsReport {
  double nu = 0.0;
  double mu_upper = 0.0;     // 2 eta / L^2
  bool mu_ok = false;        // 0 < mu < 2 eta / L^2
  bool rho_gamma_ok = false; // 0 <= rho gamma < nu
  std::vector<std::string> failures;

  bool ok() const { return mu_ok && rho_gamma_ok; }
};

/// nu = 1 - sqrt(1 - mu (2 eta - mu L^2)), evaluated in the cancellation-free
/// form q / (1 + sqrt(1 - q)). Throws ValidationError unless 0 < mu < 2 eta / L^2.
double compute_nu(double mu, double eta, double lip);

ConstantsReport validate_constants(const Constants& c);

// ---- concrete operator library ---------------------------------------------

/// F(x) = A x + b with A symmetric positive definite; eta and L are the extreme
/// eigenvalues of A.
StronglyMonotoneOp affine_spd(const std::vector<Vector>& rows, Vector b);
StronglyMonotoneOp identity_operator(std::size_t dim);

NonexpansiveMap identity_map(std::size_t dim);
NonexpansiveMap projection_map(ConvexSet set);
/// Rotation by `angle` radians in the (x0, x1) coordinate plane about `center`.
NonexpansiveMap rotation_map(Vector center, double angle);
NonexpansiveMap constant_map(Vector value);

LipschitzMap zero_lipschitz(std::size_t dim);
LipschitzMap constant_lipschitz(Vector value);
LipschitzMap as_lipschitz(const NonexpansiveMap& map);
LipschitzMap as_lipschitz(const StronglyMonotoneOp& op);

/// x -> sum_i w_i T_i(x). Weights must be positive and sum to 1 within 1e-12.
NonexpansiveMap convex_combination(std::vector<double> weights, std::vector<NonexpansiveMap> maps);

/// T_n(x) = base(x) + c_n (x - p), a_n = c_n * region_diameter, where p is the
/// unique declared fixed point of `base`.
NearlyNonexpansiveFamily perturbed_family(NonexpansiveMap base, Sequence c_seq,
                                          double region_diameter);

/// T_n = base for every n; only the slack sequence a_n is carried.
NearlyNonexpansiveFamily constant_residual_family(NonexpansiveMap base, Sequence a_seq);

/// Monte Carlo lower estimate of the deviation sup_{x in region} |T_m x - T_k x|.
/// The same `seed` draws the same points, so estimates for different (m, k)
/// share one sample.
double deviation_estimate(const NearlyNonexpansiveFamily& family, std::size_t m, std::size_t k,
                          const ConvexSet& region, std::size_t samples, std::uint64_t seed);

// ---- empirical audits of declared constants --------------------------------

struct AuditResult {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // max over pairs of (lhs - rhs), may be negative

  bool ok() const { return violations == 0; }
};

/// |V x - V y| <= gamma |x - y| + tol
AuditResult audit_lipschitz(const LipschitzMap& map, const ConvexSet& region, std::size_t pairs,
                            std::uint64_t seed, double tol = 1e-9);
/// Lipschitz bound L and monotonicity bound eta, both at `tol`.
AuditResult audit_strongly_monotone(const StronglyMonotoneOp& op, const ConvexSet& region,
                                    std::size_t pairs, std::uint64_t seed, double tol = 1e-9);
AuditResult audit_nonexpansive(const NonexpansiveMap& map, const ConvexSet& region,
                               std::size_t pairs, std::uint64_t seed, double tol = 1e-9);
/// |T_n x - T_n y| <= |x - y| + a_n + tol for one index n.
AuditResult audit_nearly_nonexpansive(const NearlyNonexpansiveFamily& family, std::size_t n,
                                      const ConvexSet& region, std::size_t pairs,
                                      std::uint64_t seed, double tol = 1e-9);

}  // namespace hierfix
