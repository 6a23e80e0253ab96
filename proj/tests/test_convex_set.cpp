#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hierfix/convex_set.hpp"
#include "hierfix/errors.hpp"
#include "support.hpp"

using namespace hierfix;

namespace {

// Nearest point of the unit simplex by enumerating every support set.
Vector simplex_by_enumeration(const Vector& x) {
  const std::size_t d = x.size();
  Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    double sum = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) {
        sum += x[i];
        ++k;
      }
    const double shift = (sum - 1.0) / static_cast<double>(k);
    Vector z = Vector::zeros(d);
    bool feasible = true;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) {
        z[i] = x[i] - shift;
        feasible = feasible && z[i] >= 0.0;
      }
    if (feasible && distance(z, x) < best_dist) {
      best_dist = distance(z, x);
      best = z;
    }
  }
  return best;
}

bool close(const Vector& a, const Vector& b, double tol) { return distance(a, b) <= tol; }

}  // namespace

TEST_CASE("projection examples") {
  CHECK(close(ConvexSet::ball(Vector{0.0, 0.0}, 1.0).project(Vector{2.0, 0.0}), Vector{1.0, 0.0}, 1e-15));
  CHECK(close(ConvexSet::halfspace(Vector{1.0, 0.0}, 0.0).project(Vector{2.0, 3.0}), Vector{0.0, 3.0}, 1e-15));
  CHECK(close(ConvexSet::hyperplane(Vector{1.0, 1.0}, 2.0).project(Vector{0.0, 0.0}), Vector{1.0, 1.0}, 1e-15));
  const auto orthant = ConvexSet::intersection(
      {ConvexSet::halfspace(Vector{1.0, 0.0}, 0.0), ConvexSet::halfspace(Vector{0.0, 1.0}, 0.0)});
  CHECK(close(orthant.project(Vector{1.0, 1.0}), Vector{0.0, 0.0}, 1e-9));
  CHECK(close(ConvexSet::box(Vector{0.0, 0.0}, Vector{1.0, 1.0}).project(Vector{2.0, -1.0}), Vector{1.0, 0.0}, 0.0));
  CHECK(close(ConvexSet::point(Vector{3.0, 4.0}).project(Vector{0.0, 0.0}), Vector{3.0, 4.0}, 0.0));
}

TEST_CASE("containment examples") {
  CHECK(ConvexSet::box(Vector{0.0, 0.0}, Vector{1.0, 1.0}).contains(Vector{0.5, 0.5}, 0.0));
  CHECK(ConvexSet::ball(Vector{0.0, 0.0}, 1.0).contains(Vector{1.0 + 1e-12, 0.0}, 1e-9));
  CHECK_FALSE(ConvexSet::simplex(2).contains(Vector{0.7, 0.4}, 1e-9));
  CHECK(ConvexSet::simplex(2).contains(Vector{0.6, 0.4}, 1e-9));
  CHECK_FALSE(ConvexSet::hyperplane(Vector{1.0, 1.0}, 2.0).contains(Vector{0.0, 0.0}, 1e-9));
}

TEST_CASE("construction rejects degenerate inputs") {
  CHECK_THROWS_AS(ConvexSet::ball(Vector{0.0}, 0.0), UsageError);
  CHECK_THROWS_AS(ConvexSet::ball(Vector{0.0}, -1.0), UsageError);
  CHECK_THROWS_AS(ConvexSet::halfspace(Vector{0.0, 0.0}, 1.0), UsageError);
  CHECK_THROWS_AS(ConvexSet::hyperplane(Vector{0.0, 0.0}, 1.0), UsageError);
  CHECK_THROWS_AS(ConvexSet::box(Vector{1.0, 0.0}, Vector{0.0, 1.0}), UsageError);
  CHECK_THROWS_AS(ConvexSet::affine(Vector{0.0, 0.0}, {Vector{1.0, 0.0}, Vector{1.0, 1.0}}), UsageError);
  CHECK_THROWS_AS(ConvexSet::intersection({ConvexSet::whole(2), ConvexSet::whole(3)}), UsageError);
  CHECK_THROWS_AS(ConvexSet::ball(Vector{0.0, 0.0}, 1.0).project(Vector{1.0}), UsageError);
}

TEST_CASE("empty intersection is reported as a projection failure") {
  const auto empty = ConvexSet::intersection(
      {ConvexSet::halfspace(Vector{1.0, 0.0}, -1.0), ConvexSet::halfspace(Vector{-1.0, 0.0}, -1.0)});
  DykstraOptions opts;
  opts.max_sweeps = 500;
  CHECK_THROWS_AS(empty.project(Vector{0.0, 0.0}, opts), ProjectionError);
}

TEST_CASE("projection axioms on every set variant") {
  for (const auto& [name, set] : testing::set_zoo()) {
    CAPTURE(name);
    const auto r = testing::check_projection_axioms(set, 2000, 5);
    CHECK(r.idempotence <= 1e-9);
    CHECK(r.nonexpansive <= 1e-10);
    CHECK(r.variational <= 1e-9);
    CHECK(r.outside == 0);
  }
}

TEST_CASE("simplex projection agrees with the enumeration oracle") {
  std::mt19937_64 rng(3);
  for (std::size_t d = 1; d <= 4; ++d)
    for (int i = 0; i < 2000; ++i) {
      const Vector x = testing::random_vector(rng, d, 3.0);
      CHECK(distance(project_simplex(x), simplex_by_enumeration(x)) <= 1e-9);
    }
}

TEST_CASE("bounded-set queries") {
  const auto box = ConvexSet::cube(2, -10.0, 10.0);
  CHECK(box.is_bounded());
  CHECK(box.diameter() == doctest::Approx(20.0 * std::sqrt(2.0)));
  CHECK(ConvexSet::ball(Vector{0.0, 0.0}, 3.0).diameter() == 6.0);
  CHECK_FALSE(ConvexSet::hyperplane(Vector{1.0, 1.0}, 2.0).is_bounded());
  CHECK(ConvexSet::point(Vector{1.0, 2.0}).singleton() == Vector{1.0, 2.0});
  CHECK_FALSE(ConvexSet::hyperplane(Vector{1.0, 1.0}, 2.0).singleton().has_value());

  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) CHECK(box.contains(box.sample(rng), 0.0));
  CHECK_THROWS_AS(ConvexSet::whole(2).sample(rng), UsageError);
}
