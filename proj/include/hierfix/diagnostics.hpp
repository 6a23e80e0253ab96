#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hierfix/solver.hpp"

namespace hierfix {

struct OracleResult {
  Vector solution;
  std::size_t iterations = 0;
  double final_residual = 0.0;  // last |z_{k+1} - z_k|
  std::string method = "projected_gradient";
};

/// Points of `fset` obtained by projecting uniform draws from `region`.
std::vector<Vector> sample_fixed_set(const ConvexSet& fset, const ConvexSet& region,
                                     std::size_t samples, std::uint64_t seed);

/// max over sampled z in F of <rho V x - mu F x, z - x>. Nonpositive (up to
/// sampling) exactly at the VI solution.
double vi_residual(const Vector& x, const ProblemSpec& prob, std::size_t samples,
                   std::uint64_t seed);
double vi_residual(const Vector& x, const ProblemSpec& prob, const std::vector<Vector>& fset_points);

/// tau = (mu eta - rho gamma) / (mu L + rho gamma)^2
double default_oracle_step(const Constants& c);

/// Projected-gradient fixed point z = P_F(z - tau (mu F z - rho V z)) from
/// z_0 = P_F(0). Throws UsageError for tau outside (0, 2 m / M^2) and
/// OracleError when max_iter is exhausted.
OracleResult oracle_solve(const ProblemSpec& prob, std::optional<double> tau = std::nullopt,
                          double tol = 1e-12, std::size_t max_iter = 100000);

/// Only for V = 0, F = I: is x within tol of P_F(0)?
bool min_norm_check(const ProblemSpec& prob, const Vector& x, double tol);

/// min over sampled z in fset of <x - S x, z - x>; >= 0 iff x solves the
/// hierarchical problem on the sample.
double hierarchical_residual(const Vector& x, const MapFn& S, const ConvexSet& fset,
                             const ConvexSet& region, std::size_t samples, std::uint64_t seed);

/// S = I - (mu F - rho V): the hierarchical problem with this S has the same
/// solution as the variational inequality of `prob`.
MapFn vi_equivalent_map(const ProblemSpec& prob);

/// Trace hook filling vi_residual (on a fixed sample of F) and, when an oracle
/// solution is given, dist_oracle.
TraceHook make_certifier(const ProblemSpec& prob, std::optional<Vector> oracle_solution,
                         std::size_t samples, std::uint64_t seed);

}  // namespace hierfix
