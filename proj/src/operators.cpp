#include "hierfix/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hierfix/errors.hpp"
#include "hierfix/random.hpp"

namespace hierfix {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <class PairCheck>
AuditResult audit_pairs(const ConvexSet& region, std::size_t pairs, std::uint64_t seed,
                        PairCheck&& excess_of) {
  auto rng = make_rng(seed);
  AuditResult res;
  res.samples = pairs;
  res.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs; ++i) {
    const Vector x = region.sample(rng);
    const Vector y = region.sample(rng);
    const double excess = excess_of(x, y);
    res.worst_excess = std::max(res.worst_excess, excess);
    if (excess > 0.0) ++res.violations;
  }
  return res;
}

}  // namespace

double compute_nu(double mu, double eta, double lip) {
  if (!(eta > 0.0) || !(lip > 0.0))
    throw ValidationError("constants: eta and L must be positive");
  const double bound = 2.0 * eta / (lip * lip);
  if (!(mu > 0.0) || !(mu < bound))
    throw ValidationError("mu out of admissible range: 0<μ<2η/L² violated (mu=" + fmt(mu) +
                          ", 2eta/L^2=" + fmt(bound) + ")");
  double q = mu * (2.0 * eta - mu * lip * lip);
  if (q > 1.0 + 1e-12)
    throw ValidationError("constants: eta=" + fmt(eta) + " exceeds L=" + fmt(lip) +
                          "; no operator is both");
  q = std::min(q, 1.0);
  return q / (1.0 + std::sqrt(1.0 - q));
}

Constants Constants::make(double mu, double rho, double gamma, double lip, double eta) {
  Constants c{mu, rho, gamma, lip, eta, std::numeric_limits<double>::quiet_NaN()};
  try {
    c.nu = compute_nu(mu, eta, lip);
  } catch (const ValidationError&) {
  }
  return c;
}

ConstantsReport validate_constants(const Constants& c) {
  ConstantsReport r;
  r.mu_upper = c.lip > 0.0 ? 2.0 * c.eta / (c.lip * c.lip) : std::numeric_limits<double>::quiet_NaN();
  try {
    r.nu = compute_nu(c.mu, c.eta, c.lip);
    r.mu_ok = true;
  } catch (const ValidationError& e) {
    r.nu = std::numeric_limits<double>::quiet_NaN();
    r.failures.emplace_back(e.what());
  }
  const double rg = c.rho * c.gamma;
  r.rho_gamma_ok = r.mu_ok && c.rho >= 0.0 && c.gamma >= 0.0 && rg < r.nu;
  if (r.mu_ok && !r.rho_gamma_ok)
    r.failures.push_back("0≤ργ<ν violated (rho*gamma=" + fmt(rg) + ", nu=" + fmt(r.nu) + ")");
  return r;
}

StronglyMonotoneOp affine_spd(const std::vector<Vector>& rows, Vector b) {
  const std::size_t d = rows.size();
  if (d == 0 || b.size() != d) throw UsageError("affine_spd: matrix/offset dimension mismatch");
  Eigen::MatrixXd a(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) throw UsageError("affine_spd: matrix is not square");
    for (std::size_t j = 0; j < d; ++j) a(i, j) = rows[i][j];
  }
  if (!a.allFinite() || !b.all_finite()) throw UsageError("affine_spd: non-finite entries");
  if ((a - a.transpose()).norm() > 1e-12 * std::max(1.0, a.norm()))
    throw UsageError("affine_spd: matrix is not symmetric");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw UsageError("affine_spd: matrix is not positive definite");

  std::vector<double> flat(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) flat[i * d + j] = a(i, j);
  MapFn eval = [flat = std::move(flat), b = std::move(b), d](const Vector& x) {
    if (x.size() != d) throw UsageError("affine_spd: dimension mismatch");
    Vector out = b;
    for (std::size_t i = 0; i < d; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += flat[i * d + j] * x[j];
      out[i] += acc;
    }
    return out;
  };
  return {std::move(eval), hi, lo, "affine_spd"};
}

StronglyMonotoneOp identity_operator(std::size_t) {
  return {[](const Vector& x) { return x; }, 1.0, 1.0, "identity"};
}

NonexpansiveMap identity_map(std::size_t dim) {
  return {[](const Vector& x) { return x; }, ConvexSet::whole(dim), "identity"};
}

NonexpansiveMap projection_map(ConvexSet set) {
  auto hint = set;
  return {[set = std::move(set)](const Vector& x) { return set.project(x); }, std::move(hint),
          "projection"};
}

NonexpansiveMap rotation_map(Vector center, double angle) {
  const std::size_t d = center.size();
  if (d < 2) throw UsageError("rotation: needs dimension >= 2");
  if (!center.all_finite() || !std::isfinite(angle)) throw UsageError("rotation: non-finite data");
  const double c = std::cos(angle);
  const double s = std::sin(angle);

  const double turns = angle / (2.0 * std::numbers::pi);
  std::optional<ConvexSet> fixed;
  if (std::abs(turns - std::round(turns)) < 1e-15) {
    fixed = ConvexSet::whole(d);
  } else {
    std::vector<Vector> basis;
    for (std::size_t i = 2; i < d; ++i) basis.push_back(Vector::unit(d, i));
    fixed = ConvexSet::affine(center, std::move(basis));
  }
  MapFn eval = [center = std::move(center), c, s](const Vector& x) {
    require_same_dim(x, center, "rotation");
    Vector out = x;
    const double u = x[0] - center[0];
    const double v = x[1] - center[1];
    out[0] = center[0] + c * u - s * v;
    out[1] = center[1] + s * u + c * v;
    return out;
  };
  return {std::move(eval), std::move(fixed), "rotation"};
}

NonexpansiveMap constant_map(Vector value) {
  if (value.empty() || !value.all_finite()) throw UsageError("constant map: invalid value");
  auto hint = ConvexSet::point(value);
  return {[value = std::move(value)](const Vector&) { return value; }, std::move(hint), "constant"};
}

LipschitzMap zero_lipschitz(std::size_t dim) {
  return {[dim](const Vector&) { return Vector::zeros(dim); }, 0.0, "zero"};
}

LipschitzMap constant_lipschitz(Vector value) {
  if (value.empty() || !value.all_finite()) throw UsageError("constant map: invalid value");
  return {[value = std::move(value)](const Vector&) { return value; }, 0.0, "constant"};
}

LipschitzMap as_lipschitz(const NonexpansiveMap& map) {
  return {map.eval, map.kind == "constant" ? 0.0 : 1.0, map.kind};
}

LipschitzMap as_lipschitz(const StronglyMonotoneOp& op) { return {op.eval, op.lip, op.kind}; }

NonexpansiveMap convex_combination(std::vector<double> weights, std::vector<NonexpansiveMap> maps) {
  if (weights.empty() || weights.size() != maps.size())
    throw UsageError("convex_combination: need one positive weight per map");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw UsageError("convex_combination: weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw UsageError("convex_combination: weights sum to " + fmt(sum) + ", not 1");

  std::optional<ConvexSet> hint;
  const bool all_declared =
      std::all_of(maps.begin(), maps.end(), [](const auto& m) { return m.fixed_set_hint.has_value(); });
  if (all_declared) {
    std::vector<ConvexSet> members;
    for (const auto& m : maps) members.push_back(*m.fixed_set_hint);
    // throws on dimension mismatch between members
    hint = members.size() == 1 ? members.front() : ConvexSet::intersection(std::move(members));
  }
  MapFn eval = [weights = std::move(weights), maps = std::move(maps)](const Vector& x) {
    Vector out = weights[0] * maps[0](x);
    for (std::size_t i = 1; i < maps.size(); ++i) out.axpy(weights[i], maps[i](x));
    return out;
  };
  return {std::move(eval), std::move(hint), "combo"};
}

NearlyNonexpansiveFamily perturbed_family(NonexpansiveMap base, Sequence c_seq,
                                          double region_diameter) {
  if (!base.fixed_set_hint)
    throw UsageError("perturbed_family: base map has no declared fixed-point set");
  const auto p = base.fixed_set_hint->singleton();
  if (!p)
    throw UsageError(
        "perturbed_family: base map must have a unique declared fixed point (got a " +
        base.fixed_set_hint->kind() + " fixed set)");
  if (!(region_diameter > 0.0) || !std::isfinite(region_diameter))
    throw UsageError("perturbed_family: region diameter must be positive");

  IndexedMapFn eval = [base = base, c_seq, p = *p](std::size_t n, const Vector& x) {
    Vector out = base(x);
    return out.axpy(c_seq(n), x - p);
  };
  Sequence a_seq = [c_seq, region_diameter](std::size_t n) { return c_seq(n) * region_diameter; };
  return {std::move(eval), std::move(a_seq), base, ConvexSet::point(*p)};
}

NearlyNonexpansiveFamily constant_residual_family(NonexpansiveMap base, Sequence a_seq) {
  if (!base.fixed_set_hint)
    throw UsageError("constant_residual_family: base map has no declared fixed-point set");
  IndexedMapFn eval = [base](std::size_t, const Vector& x) { return base(x); };
  ConvexSet fixed = *base.fixed_set_hint;
  return {std::move(eval), std::move(a_seq), std::move(base), std::move(fixed)};
}

double deviation_estimate(const NearlyNonexpansiveFamily& family, std::size_t m, std::size_t k,
                          const ConvexSet& region, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw UsageError("deviation_estimate: samples must be >= 1");
  if (!region.is_bounded() || !(std::holds_alternative<sets::Box>(region.variant()) ||
                                std::holds_alternative<sets::Ball>(region.variant())))
    throw UsageError("deviation_estimate: region must be a bounded box or ball");
  auto rng = make_rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector x = region.sample(rng);
    if (m == k) continue;
    worst = std::max(worst, distance(family(m, x), family(k, x)));
  }
  return worst;
}

AuditResult audit_lipschitz(const LipschitzMap& map, const ConvexSet& region, std::size_t pairs,
                            std::uint64_t seed, double tol) {
  return audit_pairs(region, pairs, seed, [&](const Vector& x, const Vector& y) {
    return distance(map(x), map(y)) - map.gamma * distance(x, y) - tol;
  });
}

AuditResult audit_strongly_monotone(const StronglyMonotoneOp& op, const ConvexSet& region,
                                    std::size_t pairs, std::uint64_t seed, double tol) {
  return audit_pairs(region, pairs, seed, [&](const Vector& x, const Vector& y) {
    const Vector df = op(x) - op(y);
    const Vector dx = x - y;
    const double lip_excess = norm(df) - op.lip * norm(dx) - tol;
    const double mono_excess = op.eta * squared_norm(dx) - inner(df, dx) - tol;
    return std::max(lip_excess, mono_excess);
  });
}

AuditResult audit_nonexpansive(const NonexpansiveMap& map, const ConvexSet& region,
                               std::size_t pairs, std::uint64_t seed, double tol) {
  return audit_pairs(region, pairs, seed, [&](const Vector& x, const Vector& y) {
    return distance(map(x), map(y)) - distance(x, y) - tol;
  });
}

AuditResult audit_nearly_nonexpansive(const NearlyNonexpansiveFamily& family, std::size_t n,
                                      const ConvexSet& region, std::size_t pairs,
                                      std::uint64_t seed, double tol) {
  const double a_n = family.a_seq(n);
  return audit_pairs(region, pairs, seed, [&](const Vector& x, const Vector& y) {
    return distance(family(n, x), family(n, y)) - distance(x, y) - a_n - tol;
  });
}

}  // namespace hierfix
