#include "hierfix/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "hierfix/errors.hpp"

namespace hierfix {

namespace sets {
bool operator==(const Intersection& a, const Intersection& b) { return a.members == b.members; }
}  // namespace sets

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const Vector& v, const char* what) {
  if (v.empty()) throw UsageError(std::string(what) + ": empty vector");
  if (!v.all_finite()) throw UsageError(std::string(what) + ": non-finite component");
}

void require_dim(const ConvexSet& s, const Vector& x, const char* where) {
  if (s.dimension() != x.size())
    throw UsageError(std::string(where) + ": point of dimension " + std::to_string(x.size()) +
                     " for a set of dimension " + std::to_string(s.dimension()));
}

Vector project_affine(const sets::AffineSubspace& s, const Vector& x) {
  const Vector r = x - s.offset;
  Vector out = s.offset;
  for (const Vector& e : s.basis) out.axpy(inner(r, e), e);
  return out;
}

Vector dykstra(const std::vector<ConvexSet>& members, const Vector& x0, const DykstraOptions& opts,
               const ConvexSet& whole) {
  const std::size_t m = members.size();
  std::vector<Vector> incr(m, Vector::zeros(x0.size()));
  Vector x = x0;
  for (std::size_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const Vector prev = x;
    // the correction terms converge more slowly than x; both must settle
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      Vector shifted = x + incr[i];
      Vector y = members[i].project(shifted, opts);
      Vector next_incr = shifted - y;
      change = std::max(change, distance(next_incr, incr[i]));
      incr[i] = std::move(next_incr);
      x = std::move(y);
    }
    change = std::max(change, distance(x, prev));
    const double scale = 1.0 + norm(x);
    if (change <= opts.tol && whole.contains(x, 1e-9 * scale)) return x;
  }
  throw ProjectionError("projection did not converge: Dykstra exceeded " +
                        std::to_string(opts.max_sweeps) +
                        " sweeps (empty or ill-conditioned intersection?)");
}

}  // namespace

ConvexSet ConvexSet::box(Vector lo, Vector hi) {
  require_finite(lo, "box lo");
  require_finite(hi, "box hi");
  require_same_dim(lo, hi, "box");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw UsageError("box: lo > hi in component " + std::to_string(i));
  return ConvexSet(sets::Box{std::move(lo), std::move(hi)});
}

ConvexSet ConvexSet::cube(std::size_t dim, double lo, double hi) {
  return box(Vector(dim, lo), Vector(dim, hi));
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw UsageError("ball: radius must be positive and finite");
  return ConvexSet(sets::Ball{std::move(center), radius});
}

ConvexSet ConvexSet::halfspace(Vector a, double b) {
  require_finite(a, "halfspace normal");
  if (norm(a) == 0.0) throw UsageError("halfspace: zero normal vector");
  if (!std::isfinite(b)) throw UsageError("halfspace: non-finite offset");
  return ConvexSet(sets::Halfspace{std::move(a), b});
}

ConvexSet ConvexSet::hyperplane(Vector a, double b) {
  require_finite(a, "hyperplane normal");
  if (norm(a) == 0.0) throw UsageError("hyperplane: zero normal vector");
  if (!std::isfinite(b)) throw UsageError("hyperplane: non-finite offset");
  return ConvexSet(sets::Hyperplane{std::move(a), b});
}

ConvexSet ConvexSet::affine(Vector offset, std::vector<Vector> basis) {
  require_finite(offset, "affine offset");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_same_dim(offset, basis[i], "affine basis");
    for (std::size_t j = 0; j <= i; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (std::abs(inner(basis[i], basis[j]) - expected) > 1e-10)
        throw UsageError("affine: basis is not orthonormal");
    }
  }
  return ConvexSet(sets::AffineSubspace{std::move(offset), std::move(basis)});
}

ConvexSet ConvexSet::point(Vector p) { return affine(std::move(p), {}); }

ConvexSet ConvexSet::simplex(std::size_t dim) {
  if (dim == 0) throw UsageError("simplex: dimension must be >= 1");
  return ConvexSet(sets::Simplex{dim});
}

ConvexSet ConvexSet::whole(std::size_t dim) {
  if (dim == 0) throw UsageError("whole space: dimension must be >= 1");
  return ConvexSet(sets::WholeSpace{dim});
}

ConvexSet ConvexSet::intersection(std::vector<ConvexSet> members) {
  if (members.empty()) throw UsageError("intersection: no members");
  const std::size_t d = members.front().dimension();
  for (const auto& m : members)
    if (m.dimension() != d) throw UsageError("intersection: members differ in dimension");
  return ConvexSet(sets::Intersection{std::move(members)});
}

std::string ConvexSet::kind() const {
  return std::visit(overloaded{
                        [](const sets::Box&) { return "box"; },
                        [](const sets::Ball&) { return "ball"; },
                        [](const sets::Halfspace&) { return "halfspace"; },
                        [](const sets::Hyperplane&) { return "hyperplane"; },
                        [](const sets::AffineSubspace&) { return "affine"; },
                        [](const sets::Simplex&) { return "simplex"; },
                        [](const sets::WholeSpace&) { return "whole"; },
                        [](const sets::Intersection&) { return "intersection"; },
                    },
                    v_);
}

std::size_t ConvexSet::dimension() const {
  return std::visit(overloaded{
                        [](const sets::Box& s) { return s.lo.size(); },
                        [](const sets::Ball& s) { return s.center.size(); },
                        [](const sets::Halfspace& s) { return s.a.size(); },
                        [](const sets::Hyperplane& s) { return s.a.size(); },
                        [](const sets::AffineSubspace& s) { return s.offset.size(); },
                        [](const sets::Simplex& s) { return s.dimension; },
                        [](const sets::WholeSpace& s) { return s.dimension; },
                        [](const sets::Intersection& s) { return s.members.front().dimension(); },
                    },
                    v_);
}

Vector ConvexSet::project(const Vector& x, const DykstraOptions& opts) const {
  require_dim(*this, x, "project");
  return std::visit(
      overloaded{
          [&](const sets::Box& s) {
            Vector out = x;
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], s.lo[i], s.hi[i]);
            return out;
          },
          [&](const sets::Ball& s) {
            const Vector r = x - s.center;
            const double dist = norm(r);
            if (dist <= s.radius) return x;
            return s.center + (s.radius / dist) * r;
          },
          [&](const sets::Halfspace& s) {
            const double excess = inner(s.a, x) - s.b;
            if (excess <= 0.0) return x;
            Vector out = x;
            return out.axpy(-excess / squared_norm(s.a), s.a);
          },
          [&](const sets::Hyperplane& s) {
            Vector out = x;
            return out.axpy(-(inner(s.a, x) - s.b) / squared_norm(s.a), s.a);
          },
          [&](const sets::AffineSubspace& s) { return project_affine(s, x); },
          [&](const sets::Simplex&) { return project_simplex(x); },
          [&](const sets::WholeSpace&) { return x; },
          [&](const sets::Intersection& s) {
            if (s.members.size() == 1) return s.members.front().project(x, opts);
            return dykstra(s.members, x, opts, *this);
          },
      },
      v_);
}

bool ConvexSet::contains(const Vector& x, double tol) const {
  if (tol < 0.0) throw UsageError("contains: negative tolerance");
  require_dim(*this, x, "contains");
  return std::visit(
      overloaded{
          [&](const sets::Box& s) {
            for (std::size_t i = 0; i < x.size(); ++i)
              if (x[i] < s.lo[i] - tol || x[i] > s.hi[i] + tol) return false;
            return true;
          },
          [&](const sets::Ball& s) { return distance(x, s.center) <= s.radius + tol; },
          [&](const sets::Halfspace& s) { return (inner(s.a, x) - s.b) / norm(s.a) <= tol; },
          [&](const sets::Hyperplane& s) { return std::abs(inner(s.a, x) - s.b) / norm(s.a) <= tol; },
          [&](const sets::AffineSubspace& s) { return distance(x, project_affine(s, x)) <= tol; },
          [&](const sets::Simplex&) {
            double sum = 0.0;
            for (double v : x) {
              if (v < -tol) return false;
              sum += v;
            }
            return std::abs(sum - 1.0) <= tol;
          },
          [&](const sets::WholeSpace&) { return true; },
          [&](const sets::Intersection& s) {
            return std::all_of(s.members.begin(), s.members.end(),
                               [&](const ConvexSet& m) { return m.contains(x, tol); });
          },
      },
      v_);
}

bool ConvexSet::is_bounded() const {
  if (const auto* s = std::get_if<sets::Intersection>(&v_))
    return std::any_of(s->members.begin(), s->members.end(),
                       [](const ConvexSet& m) { return m.is_bounded(); });
  return std::holds_alternative<sets::Box>(v_) || std::holds_alternative<sets::Ball>(v_) ||
         std::holds_alternative<sets::Simplex>(v_) || singleton().has_value();
}

std::optional<sets::Box> ConvexSet::bounding_box() const {
  return std::visit(
      overloaded{
          [](const sets::Box& s) -> std::optional<sets::Box> { return s; },
          [](const sets::Ball& s) -> std::optional<sets::Box> {
            return sets::Box{s.center - Vector(s.center.size(), s.radius),
                             s.center + Vector(s.center.size(), s.radius)};
          },
          [](const sets::Simplex& s) -> std::optional<sets::Box> {
            return sets::Box{Vector(s.dimension, 0.0), Vector(s.dimension, 1.0)};
          },
          [](const sets::AffineSubspace& s) -> std::optional<sets::Box> {
            if (!s.basis.empty()) return std::nullopt;
            return sets::Box{s.offset, s.offset};
          },
          [](const sets::Intersection& s) -> std::optional<sets::Box> {
            for (const auto& m : s.members)
              if (auto b = m.bounding_box()) return b;
            return std::nullopt;
          },
          [](const auto&) -> std::optional<sets::Box> { return std::nullopt; },
      },
      v_);
}

std::optional<Vector> ConvexSet::singleton() const {
  if (const auto* s = std::get_if<sets::AffineSubspace>(&v_); s && s->basis.empty()) return s->offset;
  if (const auto* s = std::get_if<sets::Box>(&v_); s && s->lo == s->hi) return s->lo;
  return std::nullopt;
}

double ConvexSet::diameter() const {
  if (const auto* s = std::get_if<sets::Box>(&v_)) return distance(s->lo, s->hi);
  if (const auto* s = std::get_if<sets::Ball>(&v_)) return 2.0 * s->radius;
  throw UsageError("diameter: only defined for box and ball regions, got " + kind());
}

Vector ConvexSet::sample(std::mt19937_64& rng) const {
  if (const auto* s = std::get_if<sets::Box>(&v_)) {
    Vector out(s->lo.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = std::uniform_real_distribution<double>(s->lo[i], s->hi[i])(rng);
    return out;
  }
  if (const auto* s = std::get_if<sets::Ball>(&v_)) {
    const std::size_t d = s->center.size();
    std::normal_distribution<double> gauss;
    Vector dir(d);
    double len = 0.0;
    while (len == 0.0) {
      for (std::size_t i = 0; i < d; ++i) dir[i] = gauss(rng);
      len = norm(dir);
    }
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double r = s->radius * std::pow(u, 1.0 / static_cast<double>(d));
    return s->center + (r / len) * dir;
  }
  throw UsageError("sampling requires a bounded box or ball region, got " + kind());
}

Vector project(const ConvexSet& set, const Vector& x) { return set.project(x); }

bool contains(const ConvexSet& set, const Vector& x, double tol) { return set.contains(x, tol); }

Vector project_simplex(const Vector& x) {
  if (x.empty()) throw UsageError("project_simplex: empty vector");
  std::vector<double> u(x.begin(), x.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  Vector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i] - theta, 0.0);
  return out;
}

}  // namespace hierfix
