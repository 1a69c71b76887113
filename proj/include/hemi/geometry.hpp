#pragma once

// Primitive operations on points of the N-sphere S^N, the unit sphere in
// R^{N+1}: uniform sampling, antipodes, great-circle poles through N points,
// side predicates, and an exact determinant-sign kernel.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hemi {

/// Default tolerance on inner products of unit vectors.
inline constexpr double kDefaultTolerance = 1e-9;

/// Unit-norm check used by SpherePoint and Pole.
inline constexpr double kUnitNormTolerance = 1e-12;

/// Relative threshold of the cofactor-vector norm below which N points are
/// treated as not spanning an N-dimensional subspace.
inline constexpr double kDegeneracyThreshold = 1e-12;

using BigInt = boost::multiprecision::cpp_int;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The points handed to hyperplane_normal do not span an N-dimensional subspace.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { Positive, Negative, OnCircle };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::Positive:
      return "positive";
    case Side::Negative:
      return "negative";
    case Side::OnCircle:
      return "on_circle";
  }
  return "?";
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot: vectors of length " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace detail {

// A unit vector in R^{N+1}, N >= 1. Tagged so that points and poles do not mix
// implicitly.
template <class Tag>
class UnitVector {
 public:
  explicit UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) {
      throw std::invalid_argument("unit vector needs at least 2 coordinates, got " +
                                  std::to_string(coords_.size()));
    }
    const double r = norm(coords_);
    if (!(std::abs(r - 1.0) <= kUnitNormTolerance)) {
      throw std::invalid_argument("vector is not of unit norm (norm = " + std::to_string(r) + ")");
    }
  }

  /// Scales v to unit length. v must be finite and nonzero.
  static UnitVector normalized(std::vector<double> v) {
    const double r = norm(v);
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    for (double& x : v) x /= r;
    return UnitVector(std::move(v));
  }

  template <class OtherTag>
  explicit UnitVector(const UnitVector<OtherTag>& other) : coords_(other.coords().begin(), other.coords().end()) {}

  std::size_t dim() const { return coords_.size() - 1; }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  UnitVector operator-() const {
    std::vector<double> c(coords_);
    for (double& x : c) x = -x;
    return UnitVector(std::move(c));
  }

  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  std::vector<double> coords_;
};

struct PointTag {};
struct PoleTag {};

}  // namespace detail

/// A point of S^N.
using SpherePoint = detail::UnitVector<detail::PointTag>;

/// The pole of a hemisphere: the closed hemisphere is {x : <x,p> >= 0}.
using Pole = detail::UnitVector<detail::PoleTag>;

/// Nonzero integer vector; the exact (unnormalized) form of a point.
class IntegerVector {
 public:
  explicit IntegerVector(std::vector<BigInt> entries) : entries_(std::move(entries)) {
    if (std::all_of(entries_.begin(), entries_.end(), [](const BigInt& v) { return v == 0; })) {
      throw std::invalid_argument("IntegerVector must not be the zero vector");
    }
  }

  std::size_t size() const { return entries_.size(); }
  const BigInt& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const BigInt> entries() const { return entries_; }

  friend bool operator==(const IntegerVector&, const IntegerVector&) = default;

 private:
  std::vector<BigInt> entries_;
};

namespace detail {

// Fills out[0..dim] with a uniform point of S^dim: independent standard
// normals, normalized. Draws with norm below 1e-6 are redrawn.
template <class Rng>
void sample_unit_into(std::span<double> out, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    double r2 = 0.0;
    for (double& x : out) {
      x = gauss(rng);
      r2 += x * x;
    }
    const double r = std::sqrt(r2);
    if (r >= 1e-6) {
      for (double& x : out) x /= r;
      return;
    }
  }
  throw std::logic_error("sample_uniform_point: 100 consecutive near-zero draws");
}

// Determinant of a k x k row-major matrix by Gaussian elimination with partial
// pivoting. The matrix is overwritten.
inline double determinant_in_place(std::span<double> m, std::size_t k) {
  double det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(m[r * k + col]) > std::abs(m[piv * k + col])) piv = r;
    }
    if (m[piv * k + col] == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(m[piv * k + c], m[col * k + c]);
      det = -det;
    }
    const double p = m[col * k + col];
    det *= p;
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = m[r * k + col] / p;
      if (f == 0.0) continue;
      for (std::size_t c = col + 1; c < k; ++c) m[r * k + c] -= f * m[col * k + c];
    }
  }
  return det;
}

// Generalized cross product of N rows of length N+1: out[j] is the cofactor of
// entry (N, j) in the (N+1)x(N+1) matrix [rows; x], so that <out, x> equals
// det(rows; x) for every x. `scratch` must hold at least N*N doubles.
inline void cofactor_vector(std::span<const double* const> rows, std::span<double> out,
                            std::span<double> scratch) {
  const std::size_t n = rows.size();
  const std::size_t d = n + 1;
  if (n == 1) {
    const double* a = rows[0];
    out[0] = -a[1];
    out[1] = a[0];
    return;
  }
  if (n == 2) {
    const double* a = rows[0];
    const double* b = rows[1];
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
    return;
  }
  for (std::size_t skip = 0; skip < d; ++skip) {
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t c_out = 0;
      for (std::size_t c = 0; c < d; ++c) {
        if (c == skip) continue;
        scratch[r * n + c_out++] = rows[r][c];
      }
    }
    const double minor = determinant_in_place(scratch.first(n * n), n);
    out[skip] = ((n + skip) % 2 == 0) ? minor : -minor;
  }
}

// Unit normal of the hyperplane through `rows` and the origin, written to out.
// Returns false when the rows are degenerate relative to their Hadamard bound.
inline bool unit_normal(std::span<const double* const> rows, std::span<double> out, std::span<double> scratch) {
  cofactor_vector(rows, out, scratch);
  const std::size_t d = rows.size() + 1;
  double hadamard = 1.0;
  for (const double* row : rows) hadamard *= norm(std::span<const double>(row, d));
  const double r = norm(out);
  if (!(r > kDegeneracyThreshold * hadamard)) return false;
  for (double& x : out) x /= r;
  return true;
}

}  // namespace detail

/// Uniform random point on S^dim.
template <class Rng>
SpherePoint sample_uniform_point(std::size_t dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("sample_uniform_point: dimension must be >= 1");
  std::vector<double> c(dim + 1);
  detail::sample_unit_into(std::span<double>(c), rng);
  return SpherePoint(std::move(c));
}

inline SpherePoint antipode(const SpherePoint& x) { return -x; }

/// Pole of the great circle through N points of S^N (the generalized cross
/// product of the rows, normalized). Oriented so that det(points; pole) > 0;
/// equivalently <pole, x> has the sign of det(points; x).
inline Pole hyperplane_normal(std::span<const SpherePoint> points) {
  if (points.empty()) throw std::invalid_argument("hyperplane_normal: no points");
  const std::size_t d = points.front().coords().size();
  if (points.size() + 1 != d) {
    throw DimensionMismatch("hyperplane_normal: need exactly N = " + std::to_string(d - 1) + " points, got " +
                            std::to_string(points.size()));
  }
  std::vector<const double*> rows;
  rows.reserve(points.size());
  for (const auto& p : points) {
    if (p.coords().size() != d) throw DimensionMismatch("hyperplane_normal: points of mixed dimension");
    rows.push_back(p.coords().data());
  }
  std::vector<double> out(d);
  std::vector<double> scratch(points.size() * points.size());
  if (!detail::unit_normal(rows, out, scratch)) {
    throw DegenerateError("hyperplane_normal: points span fewer than N dimensions");
  }
  return Pole(std::move(out));
}

inline Side side_of(std::span<const double> pole, std::span<const double> x, double tol) {
  const double v = dot(pole, x);
  if (v > tol) return Side::Positive;
  if (v < -tol) return Side::Negative;
  return Side::OnCircle;
}

inline Side side_of(const Pole& p, const SpherePoint& x, double tol = kDefaultTolerance) {
  if (p.dim() != x.dim()) throw DimensionMismatch("side_of: pole and point dimensions differ");
  return side_of(p.coords(), x.coords(), tol);
}

/// Floating determinant of a square matrix given by rows.
inline double determinant(std::span<const std::vector<double>> rows) {
  const std::size_t k = rows.size();
  std::vector<double> m;
  m.reserve(k * k);
  for (const auto& r : rows) {
    if (r.size() != k) throw std::invalid_argument("determinant: matrix is not square");
    m.insert(m.end(), r.begin(), r.end());
  }
  return detail::determinant_in_place(m, k);
}

/// Exact sign (+1, 0, -1) of the determinant of a square integer matrix, by
/// Bareiss fraction-free elimination. Every division is exact.
inline int exact_det_sign(std::span<const IntegerVector> rows) {
  const std::size_t k = rows.size();
  if (k == 0) throw std::invalid_argument("exact_det_sign: empty matrix");
  std::vector<std::vector<BigInt>> m;
  m.reserve(k);
  for (const auto& r : rows) {
    if (r.size() != k) {
      throw std::invalid_argument("exact_det_sign: matrix is " + std::to_string(k) + " x " +
                                  std::to_string(r.size()) + ", not square");
    }
    m.emplace_back(r.entries().begin(), r.entries().end());
  }

  int sign = 1;
  BigInt prev = 1;
  for (std::size_t col = 0; col + 1 < k; ++col) {
    if (m[col][col] == 0) {
      std::size_t piv = col + 1;
      while (piv < k && m[piv][col] == 0) ++piv;
      if (piv == k) return 0;
      std::swap(m[piv], m[col]);
      sign = -sign;
    }
    for (std::size_t r = col + 1; r < k; ++r) {
      for (std::size_t c = col + 1; c < k; ++c) {
        m[r][c] = (m[r][c] * m[col][col] - m[r][col] * m[col][c]) / prev;
      }
      m[r][col] = 0;
    }
    prev = m[col][col];
  }
  const BigInt& last = m[k - 1][k - 1];
  if (last == 0) return 0;
  return last > 0 ? sign : -sign;
}

}  // namespace hemi
