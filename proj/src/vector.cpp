#include "hierfix/vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hierfix/errors.hpp"

namespace hierfix {

Vector Vector::unit(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw UsageError("unit vector axis out of range");
  Vector e(dim);
  e[axis] = 1.0;
  return e;
}

bool Vector::all_finite() const noexcept {
  for (double v : c_)
    if (!std::isfinite(v)) return false;
  return true;
}

void require_same_dim(const Vector& a, const Vector& b, const char* where) {
  if (a.size() != b.size())
    throw UsageError(std::string(where) + ": dimension mismatch (" + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()) + ")");
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(*this, other, "operator+");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(*this, other, "operator-");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& v : c_) v *= s;
  return *this;
}

Vector& Vector::axpy(double s, const Vector& other) {
  require_same_dim(*this, other, "axpy");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += s * other.c_[i];
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }

double inner(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "inner");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double squared_norm(const Vector& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return acc;
}

double norm(const Vector& x) {
  // hypot-style scaling keeps huge but finite components from overflowing
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double acc = 0.0;
  for (double v : x) {
    const double r = v / scale;
    acc += r * r;
  }
  return scale * std::sqrt(acc);
}

double distance(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "distance");
  return norm(x - y);
}

Vector lincomb(std::span<const double> coeffs, std::span<const Vector> vecs) {
  if (coeffs.size() != vecs.size())
    throw UsageError("lincomb: " + std::to_string(coeffs.size()) + " coefficients for " +
                     std::to_string(vecs.size()) + " vectors");
  if (vecs.empty()) throw UsageError("lincomb: empty combination");
  Vector out(vecs.front().size());
  for (std::size_t i = 0; i < vecs.size(); ++i) out.axpy(coeffs[i], vecs[i]);
  return out;
}

}  // namespace hierfix
