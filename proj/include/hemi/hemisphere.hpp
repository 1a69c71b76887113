#pragma once

// Closed- and open-hemisphere analysis of a finite configuration on S^N.
//
// The closed-hemisphere maximum is attained by a hemisphere whose boundary
// great circle passes through N of the points: any great circle can be moved
// onto N points without losing points from either side. So the search
// enumerates every N-subset, takes the great circle through it, and counts the
// remaining points on each side.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hemi/geometry.hpp"

namespace hemi {

/// n points on S^N, stored contiguously (point i occupies coords [i*(N+1), (i+1)*(N+1))).
class Configuration {
 public:
  Configuration(std::size_t dim, std::span<const SpherePoint> points, std::optional<std::string> label = {})
      : dim_(dim), label_(std::move(label)) {
    if (dim < 1) throw std::invalid_argument("Configuration: dimension must be >= 1");
    if (points.empty()) throw std::invalid_argument("Configuration: needs at least one point");
    coords_.reserve(points.size() * (dim + 1));
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].dim() != dim) {
        throw DimensionMismatch("Configuration: point " + std::to_string(i) + " lies on S^" +
                                std::to_string(points[i].dim()) + ", expected S^" + std::to_string(dim));
      }
      coords_.insert(coords_.end(), points[i].coords().begin(), points[i].coords().end());
    }
    n_ = points.size();
  }

  /// Takes ownership of n*(dim+1) packed coordinates; every point must be unit norm.
  Configuration(std::size_t dim, std::vector<double> packed, std::optional<std::string> label = {})
      : dim_(dim), coords_(std::move(packed)), label_(std::move(label)) {
    if (dim < 1) throw std::invalid_argument("Configuration: dimension must be >= 1");
    if (coords_.empty() || coords_.size() % (dim + 1) != 0) {
      throw std::invalid_argument("Configuration: packed coordinate count is not a positive multiple of N+1");
    }
    n_ = coords_.size() / (dim + 1);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(std::abs(norm(point(i)) - 1.0) <= kUnitNormTolerance)) {
        throw std::invalid_argument("Configuration: point " + std::to_string(i) + " is not of unit norm");
      }
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return n_; }
  std::span<const double> point(std::size_t i) const { return {coords_.data() + i * (dim_ + 1), dim_ + 1}; }
  SpherePoint point_at(std::size_t i) const {
    auto p = point(i);
    return SpherePoint(std::vector<double>(p.begin(), p.end()));
  }
  std::span<const double> packed() const { return coords_; }
  const std::optional<std::string>& label() const { return label_; }

 private:
  std::size_t dim_ = 0;
  std::size_t n_ = 0;
  std::vector<double> coords_;
  std::optional<std::string> label_;
};

/// Sides of the points outside an N-subset relative to the subset's great circle.
struct SideCount {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t on_circle = 0;

  std::size_t total() const { return positive + negative + on_circle; }
  friend bool operator==(const SideCount&, const SideCount&) = default;
};

struct SubsetSides {
  std::vector<std::size_t> subset;
  SideCount sides;
};

struct HemisphereReport {
  std::size_t max_count = 0;
  Pole witness_pole;
  std::vector<std::size_t> witness_subset;  // empty when no N-subset was used
  std::optional<std::vector<SubsetSides>> per_subset;
  std::size_t degenerate_subsets = 0;
};

struct BalanceVerdict {
  bool balanced = true;
  bool vacuous = false;
  std::optional<SubsetSides> violation;
};

struct OpenReport {
  Pole pole;
  std::size_t count = 0;
};

/// A point outside some N-subset lies on the subset's great circle, so the
/// balanced/unbalanced dichotomy does not apply.
class GeneralPositionViolation : public std::runtime_error {
 public:
  GeneralPositionViolation(std::vector<std::size_t> subset, SideCount sides)
      : std::runtime_error(describe(subset, sides)), subset_(std::move(subset)), sides_(sides) {}

  const std::vector<std::size_t>& subset() const { return subset_; }
  const SideCount& sides() const { return sides_; }

 private:
  static std::string describe(const std::vector<std::size_t>& subset, const SideCount& sides) {
    std::ostringstream os;
    os << "general position violated: " << sides.on_circle << " point(s) lie on the great circle through subset {";
    for (std::size_t i = 0; i < subset.size(); ++i) os << (i ? ", " : "") << subset[i];
    os << "}";
    return os.str();
  }

  std::vector<std::size_t> subset_;
  SideCount sides_;
};

class RetriesExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of points a closed hemisphere is guaranteed to contain: all of them
/// for n <= N, floor((n+N+1)/2) for n >= N.
constexpr std::size_t closed_bound(std::size_t dim, std::size_t n) {
  return n <= dim ? n : (n + dim + 1) / 2;
}

namespace detail {

// Advances a sorted k-combination of {0..n-1} to its lexicographic successor.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Result for one N-subset, handed to the scan callback.
struct SubsetView {
  std::span<const std::size_t> subset;
  bool degenerate = false;
  std::span<const double> pole;  // oriented so that det(subset rows; x) ~ <pole, x>
  SideCount sides;
};

// Enumerates the N-subsets of c in lexicographic order. For each one computes
// the unit normal and the side counts of the remaining points, then calls
// visit(const SubsetView&), which returns false to stop early.
template <class Visit>
void scan_subsets(const Configuration& c, double tol, Visit&& visit) {
  const std::size_t dim = c.dim();
  const std::size_t n = c.size();
  if (n < dim) return;
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = i;
  std::vector<const double*> rows(dim);
  std::vector<double> normal(dim + 1);
  std::vector<double> scratch(dim * dim);
  do {
    for (std::size_t i = 0; i < dim; ++i) rows[i] = c.point(idx[i]).data();
    SubsetView view{idx, false, normal, {}};
    if (!unit_normal(rows, normal, scratch)) {
      view.degenerate = true;
    } else {
      std::size_t next_member = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (next_member < dim && idx[next_member] == j) {
          ++next_member;
          continue;
        }
        switch (side_of(normal, c.point(j), tol)) {
          case Side::Positive:
            ++view.sides.positive;
            break;
          case Side::Negative:
            ++view.sides.negative;
            break;
          case Side::OnCircle:
            ++view.sides.on_circle;
            break;
        }
      }
    }
    if (!visit(std::as_const(view))) return;
  } while (next_combination(idx, n));
}

// Flips v so that its last significant coordinate is positive.
inline void orient_last_positive(std::vector<double>& v) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (std::abs(v[i]) > kUnitNormTolerance) {
      if (v[i] < 0) {
        for (double& x : v) x = -x;
      }
      return;
    }
  }
}

// A unit vector orthogonal to every point of c; requires rank(c) <= N.
inline Pole orthogonal_to_span(const Configuration& c) {
  const std::size_t d = c.dim() + 1;
  std::vector<std::vector<double>> basis;
  auto project_out = [&](std::vector<double>& v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double f = dot(v, b);
        for (std::size_t k = 0; k < d; ++k) v[k] -= f * b[k];
      }
    }
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto p = c.point(i);
    std::vector<double> v(p.begin(), p.end());
    project_out(v);
    const double r = norm(v);
    if (r > 1e-9) {
      for (double& x : v) x /= r;
      basis.push_back(std::move(v));
    }
  }
  std::vector<double> best;
  double best_norm = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<double> e(d, 0.0);
    e[k] = 1.0;
    project_out(e);
    const double r = norm(e);
    if (r > best_norm) {
      best_norm = r;
      best = std::move(e);
    }
  }
  if (!(best_norm > 1e-6)) {
    throw DegenerateError("configuration spans all of R^{N+1}; no orthogonal pole exists");
  }
  for (double& x : best) x /= best_norm;
  orient_last_positive(best);
  return Pole::normalized(std::move(best));
}

enum class BalanceStatus { Balanced, Unbalanced, NotGeneric };

struct BalanceScan {
  BalanceStatus status = BalanceStatus::Balanced;
  std::vector<std::size_t> subset;
  SideCount sides;
};

// Early-exit balance scan without exceptions; n <= N+1 is reported Balanced.
inline BalanceScan balance_scan(const Configuration& c, double tol) {
  BalanceScan out;
  if (c.size() <= c.dim() + 1) return out;
  scan_subsets(c, tol, [&](const SubsetView& v) {
    if (v.degenerate) return true;
    if (v.sides.on_circle > 0) {
      out.status = BalanceStatus::NotGeneric;
    } else {
      const std::size_t hi = std::max(v.sides.positive, v.sides.negative);
      const std::size_t lo = std::min(v.sides.positive, v.sides.negative);
      if (hi - lo <= 1) return true;
      out.status = BalanceStatus::Unbalanced;
    }
    out.subset.assign(v.subset.begin(), v.subset.end());
    out.sides = v.sides;
    return false;
  });
  return out;
}

}  // namespace detail

/// Maximum number of configuration points in a closed hemisphere, with a
/// witness pole attaining it. Candidates come from the great circles through
/// every non-degenerate N-subset; the witness is the lexicographically first
/// subset attaining the maximum, its pole turned toward the larger side (toward
/// positive last coordinate on a tie).
inline HemisphereReport max_closed_hemisphere(const Configuration& c, double tol = kDefaultTolerance,
                                              bool record_subsets = false) {
  if (!(tol > 0)) throw std::invalid_argument("max_closed_hemisphere: tolerance must be positive");
  const std::size_t dim = c.dim();
  const std::size_t n = c.size();
  if (n <= dim) return HemisphereReport{n, detail::orthogonal_to_span(c), {}, std::nullopt, 0};

  std::optional<std::vector<SubsetSides>> per_subset;
  if (record_subsets) per_subset.emplace();
  std::size_t best = 0;
  std::size_t degenerate = 0;
  std::vector<std::size_t> best_subset;
  std::vector<double> best_pole;
  detail::scan_subsets(c, tol, [&](const detail::SubsetView& v) {
    if (v.degenerate) {
      ++degenerate;
      return true;
    }
    if (per_subset) per_subset->push_back({{v.subset.begin(), v.subset.end()}, v.sides});
    const std::size_t candidate = dim + v.sides.on_circle + std::max(v.sides.positive, v.sides.negative);
    if (candidate > best) {
      best = candidate;
      best_subset.assign(v.subset.begin(), v.subset.end());
      best_pole.assign(v.pole.begin(), v.pole.end());
      if (v.sides.negative > v.sides.positive) {
        for (double& x : best_pole) x = -x;
      } else if (v.sides.negative == v.sides.positive) {
        detail::orient_last_positive(best_pole);
      }
    }
    return true;
  });

  if (best_subset.empty()) {
    // Every N-subset is degenerate: the points span fewer than N dimensions.
    return HemisphereReport{n, detail::orthogonal_to_span(c), {}, std::move(per_subset), degenerate};
  }
  return HemisphereReport{best, Pole(std::move(best_pole)), std::move(best_subset), std::move(per_subset),
                          degenerate};
}

/// Whether every great circle through N of the points splits the remaining
/// n-N points as evenly as possible (difference at most one). Trivially true
/// for n <= N+1. Stops at the first violating subset.
///
/// Throws GeneralPositionViolation if a remaining point lies on the great
/// circle of some non-degenerate subset examined.
inline BalanceVerdict is_equator_balanced(const Configuration& c, double tol = kDefaultTolerance) {
  if (!(tol > 0)) throw std::invalid_argument("is_equator_balanced: tolerance must be positive");
  if (c.size() <= c.dim() + 1) return BalanceVerdict{true, true, std::nullopt};
  auto scan = detail::balance_scan(c, tol);
  switch (scan.status) {
    case detail::BalanceStatus::Balanced:
      return BalanceVerdict{true, false, std::nullopt};
    case detail::BalanceStatus::Unbalanced:
      return BalanceVerdict{false, false, SubsetSides{std::move(scan.subset), scan.sides}};
    case detail::BalanceStatus::NotGeneric:
      break;
  }
  throw GeneralPositionViolation(std::move(scan.subset), scan.sides);
}

/// Number of points x with <x, pole> >= -tol (the closed hemisphere at tolerance).
inline std::size_t closed_count(const Configuration& c, std::span<const double> pole, double tol = kDefaultTolerance) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < c.size(); ++i) k += side_of(pole, c.point(i), tol) != Side::Negative;
  return k;
}

/// Number of points x with <x, pole> > tol.
inline std::size_t open_count(const Configuration& c, std::span<const double> pole, double tol = kDefaultTolerance) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < c.size(); ++i) k += side_of(pole, c.point(i), tol) == Side::Positive;
  return k;
}

/// A pole whose great circle avoids every point by more than tol, found by
/// rejection sampling of uniform poles.
template <class Rng>
Pole find_avoiding_pole(const Configuration& c, Rng& rng, double tol = kDefaultTolerance,
                        std::size_t max_retries = 1000) {
  std::vector<double> p(c.dim() + 1);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    detail::sample_unit_into(std::span<double>(p), rng);
    bool clear = true;
    for (std::size_t i = 0; i < c.size() && clear; ++i) clear = std::abs(dot(p, c.point(i))) > tol;
    if (clear) return Pole(std::move(p));
  }
  throw RetriesExhausted("find_avoiding_pole: no pole clears every point by " + std::to_string(tol) + " after " +
                         std::to_string(max_retries) + " attempts");
}

/// An open hemisphere holding at least ceil(n/2) points: take a great circle
/// missing every point and keep the fuller side.
template <class Rng>
OpenReport best_open_hemisphere(const Configuration& c, Rng& rng, double tol = kDefaultTolerance,
                                std::size_t max_retries = 1000) {
  Pole pole = find_avoiding_pole(c, rng, tol, max_retries);
  const std::size_t up = open_count(c, pole.coords(), tol);
  if (2 * up >= c.size()) return OpenReport{std::move(pole), up};
  return OpenReport{-pole, c.size() - up};
}

}  // namespace hemi
