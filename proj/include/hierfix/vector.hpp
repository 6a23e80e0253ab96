#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hierfix {

/// A point of R^d with the standard inner product.
///
/// Value type; arithmetic between vectors of different dimension throws
/// UsageError. Finiteness is not enforced on every operation (the solver needs
/// to observe overflow to report divergence) but can be queried with
/// all_finite().
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : c_(dim, fill) {}
  Vector(std::initializer_list<double> values) : c_(values) {}
  explicit Vector(std::vector<double> values) : c_(std::move(values)) {}

  static Vector zeros(std::size_t dim) { return Vector(dim, 0.0); }
  static Vector unit(std::size_t dim, std::size_t axis);

  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }

  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }

  std::span<const double> span() const noexcept { return c_; }
  std::span<double> span() noexcept { return c_; }
  const std::vector<double>& values() const noexcept { return c_; }

  auto begin() noexcept { return c_.begin(); }
  auto end() noexcept { return c_.end(); }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }

  bool all_finite() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s) noexcept;

  /// this += s * other
  Vector& axpy(double s, const Vector& other);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> c_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);

/// Throws UsageError when the two dimensions differ.
void require_same_dim(const Vector& a, const Vector& b, const char* where);

double inner(const Vector& x, const Vector& y);
double norm(const Vector& x);
double squared_norm(const Vector& x);
double distance(const Vector& x, const Vector& y);

/// sum_i coeffs[i] * vecs[i]
Vector lincomb(std::span<const double> coeffs, std::span<const Vector> vecs);

}  // namespace hierfix
