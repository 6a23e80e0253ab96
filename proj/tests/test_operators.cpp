#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hierfix/errors.hpp"
#include "hierfix/operators.hpp"
#include "support.hpp"

using namespace hierfix;

namespace {

const ConvexSet kRegion = ConvexSet::cube(2, -10.0, 10.0);

Sequence inv_square() {
  return [](std::size_t n) { return 1.0 / (static_cast<double>(n) * static_cast<double>(n)); };
}

}  // namespace

TEST_CASE("compute_nu") {
  CHECK(compute_nu(1.0, 1.0, 1.0) == 1.0);
  CHECK(compute_nu(0.25, 1.0, 2.0) == doctest::Approx(1.0 - std::sqrt(0.75)).epsilon(1e-14));
  CHECK(compute_nu(0.25, 1.0, 2.0) == doctest::Approx(0.133975).epsilon(1e-5));
  // continuity at zero: nu ~ mu * eta for tiny mu
  CHECK(compute_nu(1e-12, 1.0, 1.0) > 0.0);
  CHECK(compute_nu(1e-12, 1.0, 1.0) == doctest::Approx(1e-12).epsilon(1e-6));
  CHECK_THROWS_AS(compute_nu(0.0, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(compute_nu(2.0, 1.0, 1.0), ValidationError);  // mu = 2 eta / L^2 excluded
  CHECK_THROWS_WITH(compute_nu(3.0, 1.0, 2.0), doctest::Contains("mu out of admissible range"));
}

TEST_CASE("validate_constants") {
  auto ok = validate_constants(Constants::make(1.0, 0.0, 5.0, 1.0, 1.0));
  CHECK(ok.ok());
  CHECK(ok.nu == 1.0);

  auto boundary = validate_constants(Constants::make(1.0, 1.0, 1.0, 1.0, 1.0));
  CHECK_FALSE(boundary.ok());
  CHECK(boundary.mu_ok);
  CHECK_FALSE(boundary.rho_gamma_ok);

  auto mu_edge = validate_constants(Constants::make(0.5, 0.0, 0.0, 2.0, 1.0));  // 2 eta / L^2 = 0.5
  CHECK_FALSE(mu_edge.ok());
  CHECK_FALSE(mu_edge.mu_ok);
  REQUIRE(mu_edge.failures.size() == 1);
  CHECK(mu_edge.failures[0].find("0<μ<2η/L² violated") != std::string::npos);
}

TEST_CASE("affine strongly monotone operator takes its constants from the spectrum") {
  const auto F = affine_spd({Vector{2.0, 1.0}, Vector{1.0, 2.0}}, Vector{1.0, 0.0});
  CHECK(F.eta == doctest::Approx(1.0));
  CHECK(F.lip == doctest::Approx(3.0));
  CHECK(F(Vector{1.0, 1.0}) == Vector{4.0, 3.0});
  CHECK(audit_strongly_monotone(F, kRegion, 1000, 1).ok());
  CHECK_THROWS_AS(affine_spd({Vector{1.0, 2.0}, Vector{0.0, 1.0}}, Vector{0.0, 0.0}), UsageError);  // not symmetric
  CHECK_THROWS_AS(affine_spd({Vector{1.0, 0.0}, Vector{0.0, -1.0}}, Vector{0.0, 0.0}), UsageError);  // indefinite
}

TEST_CASE("nonexpansive library") {
  const auto rot = rotation_map(Vector{0.5, 0.5}, std::numbers::pi / 2.0);
  CHECK(distance(rot(Vector{1.5, 0.5}), Vector{0.5, 1.5}) <= 1e-15);
  REQUIRE(rot.fixed_set_hint);
  CHECK(rot.fixed_set_hint->singleton() == Vector{0.5, 0.5});
  CHECK(audit_nonexpansive(rot, kRegion, 1000, 2).ok());
  CHECK(audit_nonexpansive(projection_map(ConvexSet::ball(Vector{0.0, 0.0}, 3.0)), kRegion, 1000, 2).ok());
  CHECK(audit_lipschitz(zero_lipschitz(2), kRegion, 100, 2).ok());
}

TEST_CASE("convex_combination") {
  const auto p1 = projection_map(ConvexSet::hyperplane(Vector{1.0, 0.0}, 0.0));
  const auto p2 = projection_map(ConvexSet::hyperplane(Vector{0.0, 1.0}, 0.0));

  const auto single = convex_combination({1.0}, {p1});
  CHECK(single(Vector{2.0, 3.0}) == p1(Vector{2.0, 3.0}));

  const auto id = convex_combination({0.5, 0.5}, {identity_map(2), identity_map(2)});
  CHECK(id(Vector{2.0, -3.0}) == Vector{2.0, -3.0});

  const auto avg = convex_combination({0.5, 0.5}, {p1, p2});
  CHECK(distance(avg(Vector{2.0, 2.0}), Vector{1.0, 1.0}) <= 1e-15);
  REQUIRE(avg.fixed_set_hint);
  CHECK(distance(avg.fixed_set_hint->project(Vector{3.0, -4.0}), Vector{0.0, 0.0}) <= 1e-9);

  CHECK_THROWS_AS(convex_combination({0.5, 0.4}, {p1, p2}), UsageError);
  CHECK_THROWS_AS(convex_combination({1.5, -0.5}, {p1, p2}), UsageError);
  CHECK_THROWS_AS(convex_combination({1.0}, {p1, p2}), UsageError);
}

TEST_CASE("perturbed_family") {
  const auto rot = rotation_map(Vector{0.0, 0.0}, std::numbers::pi / 2.0);
  const auto fam = perturbed_family(rot, inv_square(), 20.0 * std::sqrt(2.0));
  CHECK(distance(fam(1, Vector{1.0, 0.0}), Vector{1.0, 1.0}) <= 1e-15);
  for (std::size_t n : {1, 2, 7, 1000}) CHECK(distance(fam(n, Vector{0.0, 0.0}), Vector{0.0, 0.0}) == 0.0);
  CHECK(fam.a_seq(2) == doctest::Approx(0.25 * 20.0 * std::sqrt(2.0)));

  const auto plain = perturbed_family(rot, [](std::size_t) { return 0.0; }, 1.0);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Vector x = testing::random_vector(rng, 2);
    CHECK(plain(5, x) == rot(x));
    CHECK(plain.a_seq(5) == 0.0);
  }
  CHECK_THROWS_AS(perturbed_family(projection_map(ConvexSet::hyperplane(Vector{1.0, 1.0}, 2.0)), inv_square(), 1.0),
                  UsageError);
}

TEST_CASE("constant_residual_family") {
  const auto base = projection_map(ConvexSet::hyperplane(Vector{1.0, 1.0}, 2.0));
  const auto fam = constant_residual_family(base, [](std::size_t n) { return 1.0 / static_cast<double>(n); });
  CHECK(fam.common_fixed_set == *base.fixed_set_hint);
  CHECK(fam.a_seq(4) == 0.25);
  CHECK(deviation_estimate(fam, 3, 8, kRegion, 64, 1) == 0.0);
  for (std::size_t n : {1, 2, 5, 10, 100}) CHECK(audit_nearly_nonexpansive(fam, n, kRegion, 1000, n).ok());
}

TEST_CASE("deviation_estimate") {
  const auto T = projection_map(ConvexSet::ball(Vector{0.0, 0.0}, 1.0));
  const auto same = constant_residual_family(T, [](std::size_t) { return 0.0; });
  CHECK(deviation_estimate(same, 1, 2, kRegion, 128, 4) == 0.0);

  const Vector u{0.6, 0.8};
  NearlyNonexpansiveFamily shift{
      [u](std::size_t n, const Vector& x) { return x + (1.0 / static_cast<double>(n)) * u; },
      [](std::size_t n) { return 0.0 * static_cast<double>(n); }, identity_map(2), ConvexSet::whole(2)};
  for (std::size_t n : {1, 2, 10, 1000}) {
    const double expected = 1.0 / static_cast<double>(n) - 1.0 / static_cast<double>(n + 1);
    CHECK(std::abs(deviation_estimate(shift, n, n + 1, kRegion, 128, 4) - expected) <= 1e-9);
    CHECK(deviation_estimate(shift, n, n, kRegion, 128, 4) == 0.0);
  }
  CHECK_THROWS_AS(deviation_estimate(shift, 1, 2, ConvexSet::whole(2), 16, 4), UsageError);
}

TEST_CASE("nearly nonexpansive inequality for perturbed rotations") {
  const auto fam =
      perturbed_family(rotation_map(Vector{0.5, 0.5}, std::numbers::pi / 2.0), inv_square(), kRegion.diameter());
  for (std::size_t n : {1, 2, 5, 10, 100}) {
    const auto audit = audit_nearly_nonexpansive(fam, n, kRegion, 1000, 100 + n);
    CHECK(audit.samples == 1000);
    CHECK(audit.ok());
  }
}

TEST_CASE("strong monotonicity of mu F - rho V and the contraction I - lambda mu F") {
  const auto F = affine_spd({Vector{1.0, 0.0}, Vector{0.0, 2.0}}, Vector{0.0, 0.0});
  const auto V = constant_lipschitz(Vector{1.0, 0.0});
  const double mu = 0.25, rho = 1.0;
  const double nu = compute_nu(mu, F.eta, F.lip);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lam(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const Vector x = testing::random_vector(rng, 2);
    const Vector y = testing::random_vector(rng, 2);
    const Vector ax = mu * F(x) - rho * V(x);
    const Vector ay = mu * F(y) - rho * V(y);
    CHECK(inner(ax - ay, x - y) >= (mu * F.eta - rho * V.gamma) * squared_norm(x - y) - 1e-8);
    const double l = lam(rng);
    const Vector gx = x - l * mu * F(x);
    const Vector gy = y - l * mu * F(y);
    CHECK(distance(gx, gy) <= (1.0 - l * nu) * distance(x, y) + 1e-8);
  }
}
