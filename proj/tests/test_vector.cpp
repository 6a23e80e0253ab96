#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hierfix/errors.hpp"
#include "hierfix/vector.hpp"
#include "support.hpp"

using namespace hierfix;

TEST_CASE("inner product") {
  CHECK(inner(Vector{1.0, 0.0}, Vector{0.0, 1.0}) == 0.0);
  CHECK(inner(Vector{1.0, 2.0}, Vector{3.0, 4.0}) == 11.0);
  const Vector x{0.3, -1.7, 2.5};
  CHECK(inner(x, x) == doctest::Approx(squared_norm(x)).epsilon(1e-15));
  CHECK_THROWS_AS(inner(Vector{1.0}, Vector{1.0, 2.0}), UsageError);
}

TEST_CASE("norm") {
  CHECK(norm(Vector{3.0, 4.0}) == 5.0);
  CHECK(norm(Vector{0.0, 0.0, 0.0}) == 0.0);
  const Vector x{1.5, -2.0, 7.25};
  CHECK(norm(-x) == norm(x));
  // no overflow for huge components
  CHECK(norm(Vector{3e200, 4e200}) == doctest::Approx(5e200));
  CHECK(norm(Vector{3e-200, 4e-200}) == doctest::Approx(5e-200));
}

TEST_CASE("lincomb") {
  const Vector x{1.0, -2.0, 4.0};
  const std::vector<Vector> one{x};
  const std::vector<double> c1{1.0};
  CHECK(lincomb(c1, one) == x);

  const std::vector<Vector> pts{Vector{0.0, 0.0}, Vector{2.0, 2.0}};
  const std::vector<double> half{0.5, 0.5};
  CHECK(lincomb(half, pts) == Vector{1.0, 1.0});

  const std::vector<Vector> twice{x, x};
  const std::vector<double> cancel{1.0, -1.0};
  CHECK(lincomb(cancel, twice) == Vector::zeros(3));

  const std::vector<double> three{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(lincomb(three, twice), UsageError);
  const std::vector<Vector> mixed{Vector{1.0}, Vector{1.0, 2.0}};
  CHECK_THROWS_AS(lincomb(half, mixed), UsageError);
}

TEST_CASE("arithmetic and finiteness") {
  Vector a{1.0, 2.0};
  a += Vector{1.0, 1.0};
  CHECK(a == Vector{2.0, 3.0});
  a.axpy(-2.0, Vector{1.0, 1.0});
  CHECK(a == Vector{0.0, 1.0});
  CHECK((3.0 * a) == Vector{0.0, 3.0});
  CHECK(Vector::unit(3, 1) == Vector{0.0, 1.0, 0.0});
  CHECK(a.all_finite());
  a[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(a.all_finite());
  CHECK_THROWS_AS((Vector{1.0} + Vector{1.0, 2.0}), UsageError);
}

TEST_CASE("Cauchy-Schwarz and parallelogram law on random vectors") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t d = 1 + i % 6;
    const Vector x = testing::random_vector(rng, d);
    const Vector y = testing::random_vector(rng, d);
    CHECK(std::abs(inner(x, y)) <= norm(x) * norm(y) + 1e-12);
    const double lhs = squared_norm(x + y) + squared_norm(x - y);
    const double rhs = 2.0 * squared_norm(x) + 2.0 * squared_norm(y);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * rhs);
  }
}
