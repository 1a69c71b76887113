#pragma once

// Extremal configurations.
//
// Vandermonde sets: y_i = (-1)^i (1, i, i^2, ..., i^N) for i = 1..n (1-based),
// x_i = y_i / |y_i|. For a fixed N-subset the side of a remaining x_i is the
// sign of det(subset; y_i), which up to a constant factor is (-1)^i times a
// Vandermonde determinant. Moving to the next remaining index flips the sign,
// so the remaining points alternate between the two sides and every great
// circle through N points splits the rest evenly.
//
// Antipodal sets: pairs {x, -x}; an open hemisphere holds at most one point of
// each pair.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hemi/geometry.hpp"
#include "hemi/hemisphere.hpp"

namespace hemi {

struct ExactConfiguration {
  std::size_t dim = 0;
  std::vector<IntegerVector> integer_points;  // integer_points[k] is y_{k+1}
  Configuration normalized;
};

/// The exact vector y_i for 1-based index i.
inline IntegerVector vandermonde_vector(std::size_t dim, std::size_t i) {
  std::vector<BigInt> e(dim + 1);
  BigInt power = 1;
  const BigInt sign = (i % 2 == 0) ? 1 : -1;
  for (std::size_t k = 0; k <= dim; ++k) {
    e[k] = sign * power;
    power *= i;
  }
  return IntegerVector(std::move(e));
}

inline ExactConfiguration vandermonde_config(std::size_t dim, std::size_t n) {
  if (dim < 1) throw std::invalid_argument("vandermonde_config: dimension must be >= 1");
  if (n <= dim) {
    throw std::invalid_argument("vandermonde_config: need n > N, got N = " + std::to_string(dim) +
                                ", n = " + std::to_string(n));
  }
  std::vector<IntegerVector> ys;
  std::vector<SpherePoint> xs;
  ys.reserve(n);
  xs.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    ys.push_back(vandermonde_vector(dim, i));
    std::vector<double> v;
    v.reserve(dim + 1);
    for (const auto& e : ys.back().entries()) v.push_back(e.convert_to<double>());
    xs.push_back(SpherePoint::normalized(std::move(v)));
  }
  return ExactConfiguration{
      dim, std::move(ys),
      Configuration(dim, std::span<const SpherePoint>(xs), "vandermonde N=" + std::to_string(dim) +
                                                               " n=" + std::to_string(n))};
}

/// Exact sign of det(subset rows in increasing index order; y).
inline int exact_side(std::span<const IntegerVector> points, std::span<const std::size_t> subset,
                      const IntegerVector& y) {
  std::vector<IntegerVector> rows;
  rows.reserve(subset.size() + 1);
  for (std::size_t i : subset) rows.push_back(points[i]);
  rows.push_back(y);
  return exact_det_sign(rows);
}

/// Checks, in exact arithmetic, that for every N-subset the remaining points
/// in increasing index order have strictly alternating (nonzero) sides.
inline bool verify_vandermonde(std::size_t dim, std::size_t n) {
  if (n <= dim) return false;
  const auto cfg = vandermonde_config(dim, n);
  const auto& ys = cfg.integer_points;
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  do {
    int prev = 0;
    std::size_t next_member = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (next_member < dim && idx[next_member] == j) {
        ++next_member;
        continue;
      }
      const int s = exact_side(ys, idx, ys[j]);
      if (s == 0 || s == prev) return false;
      prev = s;
    }
  } while (detail::next_combination(idx, n));
  return true;
}

/// floor(n/2) random points each followed by its antipode, plus one unpaired
/// random point when n is odd.
template <class Rng>
Configuration antipodal_config(std::size_t dim, std::size_t n, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("antipodal_config: dimension must be >= 1");
  if (n < 1) throw std::invalid_argument("antipodal_config: need at least one point");
  std::vector<SpherePoint> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    pts.push_back(sample_uniform_point(dim, rng));
    pts.push_back(antipode(pts.back()));
  }
  if (n % 2 == 1) pts.push_back(sample_uniform_point(dim, rng));
  return Configuration(dim, std::span<const SpherePoint>(pts),
                       "antipodal N=" + std::to_string(dim) + " n=" + std::to_string(n));
}

}  // namespace hemi
