#include "hierfix/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "hierfix/random.hpp"

namespace hierfix {

std::vector<Vector> sample_fixed_set(const ConvexSet& fset, const ConvexSet& region,
                                     std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw UsageError("sample_fixed_set: samples must be >= 1");
  auto rng = make_rng(seed);
  std::vector<Vector> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) out.push_back(fset.project(region.sample(rng)));
  return out;
}

double vi_residual(const Vector& x, const ProblemSpec& prob, const std::vector<Vector>& points) {
  Vector direction = prob.constants.rho * prob.V(x);
  direction.axpy(-prob.constants.mu, prob.F(x));
  double worst = -std::numeric_limits<double>::infinity();
  for (const Vector& z : points) worst = std::max(worst, inner(direction, z - x));
  return worst;
}

double vi_residual(const Vector& x, const ProblemSpec& prob, std::size_t samples,
                   std::uint64_t seed) {
  return vi_residual(
      x, prob, sample_fixed_set(prob.family.common_fixed_set, prob.sampling_region(), samples, seed));
}

double default_oracle_step(const Constants& c) {
  const double m = c.mu * c.eta - c.rho * c.gamma;
  const double big = c.mu * c.lip + c.rho * c.gamma;
  return m / (big * big);
}

OracleResult oracle_solve(const ProblemSpec& prob, std::optional<double> tau, double tol,
                          std::size_t max_iter) {
  const Constants& c = prob.constants;
  const double m = c.mu * c.eta - c.rho * c.gamma;
  const double big = c.mu * c.lip + c.rho * c.gamma;
  if (!(m > 0.0)) throw UsageError("oracle_solve: mu*eta - rho*gamma must be positive");
  const double step = tau.value_or(default_oracle_step(c));
  const double upper = 2.0 * m / (big * big);
  if (!(step > 0.0 && step < upper))
    throw UsageError("oracle_solve: tau=" + std::to_string(step) + " outside (0, " +
                     std::to_string(upper) + ")");

  const ConvexSet& fset = prob.family.common_fixed_set;
  Vector z = fset.project(Vector::zeros(prob.dimension()));
  for (std::size_t k = 1; k <= max_iter; ++k) {
    Vector g = c.mu * prob.F(z);
    g.axpy(-c.rho, prob.V(z));
    Vector next = z;
    next.axpy(-step, g);
    next = fset.project(next);
    const double change = distance(next, z);
    z = std::move(next);
    if (change < tol) return OracleResult{std::move(z), k, change, "projected_gradient"};
  }
  throw OracleError("oracle did not converge within " + std::to_string(max_iter) + " iterations");
}

bool min_norm_check(const ProblemSpec& prob, const Vector& x, double tol) {
  const std::size_t d = prob.dimension();
  const Vector origin = Vector::zeros(d);
  // gamma = 0 with V(0) = 0 forces V = 0; L = eta = 1 with F(0) = 0 forces F = I
  const bool v_zero = prob.V.gamma == 0.0 && norm(prob.V(origin)) == 0.0;
  const bool f_identity =
      prob.F.lip == 1.0 && prob.F.eta == 1.0 && norm(prob.F(origin)) == 0.0;
  if (!v_zero || !f_identity)
    throw UsageError("min_norm_check: requires V = 0 and F = identity");
  return distance(x, prob.family.common_fixed_set.project(origin)) <= tol;
}

double hierarchical_residual(const Vector& x, const MapFn& S, const ConvexSet& fset,
                             const ConvexSet& region, std::size_t samples, std::uint64_t seed) {
  const Vector direction = x - S(x);
  double best = std::numeric_limits<double>::infinity();
  for (const Vector& z : sample_fixed_set(fset, region, samples, seed))
    best = std::min(best, inner(direction, z - x));
  return best;
}

MapFn vi_equivalent_map(const ProblemSpec& prob) {
  return [V = prob.V, F = prob.F, mu = prob.constants.mu, rho = prob.constants.rho](const Vector& x) {
    Vector out = x;
    out.axpy(-mu, F(x));
    out.axpy(rho, V(x));
    return out;
  };
}

TraceHook make_certifier(const ProblemSpec& prob, std::optional<Vector> oracle_solution,
                         std::size_t samples, std::uint64_t seed) {
  auto points = std::make_shared<const std::vector<Vector>>(
      sample_fixed_set(prob.family.common_fixed_set, prob.sampling_region(), samples, seed));
  return [prob, points, oracle = std::move(oracle_solution)](const SolverState& s, TraceRow& row) {
    row.vi_residual = vi_residual(s.x, prob, *points);
    if (oracle) row.dist_oracle = distance(s.x, *oracle);
  };
}

}  // namespace hierfix
