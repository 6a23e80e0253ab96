#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hierfix/convex_set.hpp"
#include "hierfix/vector.hpp"

namespace testing {

using hierfix::ConvexSet;
using hierfix::Vector;

inline Vector random_vector(std::mt19937_64& rng, std::size_t d, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(d);
  for (auto& c : v) c = u(rng);
  return v;
}

struct NamedSet {
  std::string name;
  ConvexSet set;
};

// One representative of every set variant, in dimension 3.
inline std::vector<NamedSet> set_zoo() {
  const double r = 1.0 / std::sqrt(2.0);
  return {
      {"box", ConvexSet::box(Vector{-1.0, 0.0, 2.0}, Vector{1.0, 3.0, 2.5})},
      {"ball", ConvexSet::ball(Vector{1.0, -1.0, 0.5}, 2.0)},
      {"halfspace", ConvexSet::halfspace(Vector{1.0, 2.0, -1.0}, 0.5)},
      {"hyperplane", ConvexSet::hyperplane(Vector{0.0, 3.0, 4.0}, 5.0)},
      {"affine", ConvexSet::affine(Vector{1.0, 1.0, 1.0}, {Vector{r, r, 0.0}})},
      {"point", ConvexSet::point(Vector{0.25, -0.5, 3.0})},
      {"simplex", ConvexSet::simplex(3)},
      {"whole", ConvexSet::whole(3)},
      {"intersection",
       ConvexSet::intersection({ConvexSet::ball(Vector{0.0, 0.0, 0.0}, 2.0),
                                ConvexSet::halfspace(Vector{1.0, 1.0, 0.0}, 1.0),
                                ConvexSet::box(Vector{-1.5, -3.0, -3.0}, Vector{3.0, 3.0, 0.5})})},
  };
}

struct AxiomReport {
  double idempotence = 0.0;      // max |P(Px) - Px|
  double nonexpansive = -1e300;  // max |Px - Py| - |x - y|
  double variational = -1e300;   // max <x - Px, y - Px> over y in S
  std::size_t outside = 0;       // projections not contained in S (tol 1e-9)
};

inline AxiomReport check_projection_axioms(const ConvexSet& s, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AxiomReport r;
  const std::size_t d = s.dimension();
  for (std::size_t i = 0; i < trials; ++i) {
    const Vector x = random_vector(rng, d);
    const Vector y = random_vector(rng, d);
    const Vector px = s.project(x);
    const Vector py = s.project(y);
    r.idempotence = std::max(r.idempotence, hierfix::distance(s.project(px), px));
    r.nonexpansive = std::max(r.nonexpansive, hierfix::distance(px, py) - hierfix::distance(x, y));
    // py is an arbitrary member of S
    r.variational = std::max(r.variational, hierfix::inner(x - px, py - px));
    if (!s.contains(px, 1e-9)) ++r.outside;
  }
  return r;
}

}  // namespace testing
