#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "hierfix/vector.hpp"

namespace hierfix {

class ConvexSet;

namespace sets {

/// {x : lo <= x <= hi}
struct Box {
  Vector lo, hi;
  friend bool operator==(const Box&, const Box&) = default;
};

/// {x : |x - center| <= radius}
struct Ball {
  Vector center;
  double radius = 1.0;
  friend bool operator==(const Ball&, const Ball&) = default;
};

/// {x : <a, x> <= b}
struct Halfspace {
  Vector a;
  double b = 0.0;
  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// {x : <a, x> = b}
struct Hyperplane {
  Vector a;
  double b = 0.0;
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

/// offset + span(basis), basis orthonormal. An empty basis is the singleton {offset}.
struct AffineSubspace {
  Vector offset;
  std::vector<Vector> basis;
  friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;
};

/// {x >= 0, sum x = 1}
struct Simplex {
  std::size_t dimension = 1;
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

struct WholeSpace {
  std::size_t dimension = 1;
  friend bool operator==(const WholeSpace&, const WholeSpace&) = default;
};

struct Intersection {
  std::vector<ConvexSet> members;
  friend bool operator==(const Intersection&, const Intersection&);
};

}  // namespace sets

/// Iteration control for Dykstra's algorithm on intersections.
struct DykstraOptions {
  double tol = 1e-10;          // on the per-sweep change of the iterate and correction terms
  std::size_t max_sweeps = 10000;
};

/// Closed convex subset of R^d with an exact (or Dykstra-converged) metric
/// projection. Construct through the named factories, which validate the
/// variant data; the variant is then immutable.
class ConvexSet {
 public:
  using Variant = std::variant<sets::Box, sets::Ball, sets::Halfspace, sets::Hyperplane,
                               sets::AffineSubspace, sets::Simplex, sets::WholeSpace,
                               sets::Intersection>;

  static ConvexSet box(Vector lo, Vector hi);
  /// Box [lo, hi]^d
  static ConvexSet cube(std::size_t dim, double lo, double hi);
  static ConvexSet ball(Vector center, double radius);
  static ConvexSet halfspace(Vector a, double b);
  static ConvexSet hyperplane(Vector a, double b);
  static ConvexSet affine(Vector offset, std::vector<Vector> basis);
  static ConvexSet point(Vector p);
  static ConvexSet simplex(std::size_t dim);
  static ConvexSet whole(std::size_t dim);
  static ConvexSet intersection(std::vector<ConvexSet> members);

  const Variant& variant() const noexcept { return v_; }
  std::string kind() const;
  std::size_t dimension() const;

  Vector project(const Vector& x, const DykstraOptions& opts = {}) const;
  bool contains(const Vector& x, double tol) const;

  /// Box and Ball only; intersections are bounded if any member is.
  bool is_bounded() const;
  /// Axis-aligned box enclosing the set, when one is cheaply known.
  std::optional<sets::Box> bounding_box() const;
  /// The single point of a singleton set (degenerate box or zero-dimensional affine set).
  std::optional<Vector> singleton() const;
  /// Euclidean diameter of a Box or Ball; throws UsageError otherwise.
  double diameter() const;

  /// Uniform sample from a Box or Ball; throws UsageError for other sets.
  Vector sample(std::mt19937_64& rng) const;

  friend bool operator==(const ConvexSet&, const ConvexSet&) = default;

 private:
  explicit ConvexSet(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Free-function forms.
Vector project(const ConvexSet& set, const Vector& x);
bool contains(const ConvexSet& set, const Vector& x, double tol);

/// Euclidean projection onto the probability simplex by sort-and-threshold.
Vector project_simplex(const Vector& x);

}  // namespace hierfix
