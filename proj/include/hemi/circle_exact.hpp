#pragma once

// The circle S^1, where the balance probability has closed forms.
//
// Rotating a diameter through half a turn and recording how many points lie in
// the open semicircle on one side gives the sweep sequence: n+1 counts, each
// step +-1 (one point crosses per event), first + last = n. The configuration
// is balanced iff all counts stay within {k, k+1} (n = 2k+1) or {k, k+1, k+2}
// (n = 2k+2). Replacing points by their antipodes leaves the event angles in
// place and only changes each step's direction, so the 2^n flip combinations
// can be enumerated directly.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hemi/geometry.hpp"
#include "hemi/hemisphere.hpp"

namespace hemi {

/// A probability as a reduced fraction.
class ExactProbability {
 public:
  ExactProbability(BigInt numerator, BigInt denominator) : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_ <= 0 || num_ < 0 || num_ > den_) throw std::invalid_argument("ExactProbability: not a probability");
    const BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  double value() const { return num_.convert_to<double>() / den_.convert_to<double>(); }

  /// "a/b", or just "a" when b = 1.
  std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

  friend bool operator==(const ExactProbability&, const ExactProbability&) = default;

 private:
  BigInt num_;
  BigInt den_;
};

inline BigInt pow2(std::size_t e) { return BigInt(1) << e; }

/// Closed forms for p(N, n), the probability that n independent uniform points
/// on S^N are equator-balanced:
///   n <= N+1       -> 1
///   n == N+2       -> 2^-(N+1)
///   N = 1, n = 2k+1 -> 4^-k
///   N = 1, n = 2k+2 -> 2^-k
/// and nothing otherwise.
inline std::optional<ExactProbability> exact_probability(std::size_t dim, std::size_t n) {
  if (dim < 1 || n < 1) throw std::invalid_argument("exact_probability: need N >= 1 and n >= 1");
  if (n <= dim + 1) return ExactProbability(1, 1);
  if (n == dim + 2) return ExactProbability(1, pow2(dim + 1));
  if (dim == 1) {
    const std::size_t k = (n - 1) / 2;
    if (n % 2 == 1) return ExactProbability(1, pow2(2 * k));
    return ExactProbability(1, pow2((n - 2) / 2));
  }
  return std::nullopt;
}

/// Duplicate or antipodal angles in a circle configuration.
class NonGeneric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kAngleTolerance = 1e-12;
inline constexpr std::size_t kFlipEnumerationLimit = 24;

/// n >= 1 angles in [0, 2pi), no two equal or antipodal.
class CircleConfiguration {
 public:
  explicit CircleConfiguration(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw std::invalid_argument("CircleConfiguration: needs at least one angle");
    constexpr double two_pi = 2 * std::numbers::pi;
    for (double& a : angles_) {
      if (!std::isfinite(a)) throw std::invalid_argument("CircleConfiguration: non-finite angle");
      a = std::fmod(a, two_pi);
      if (a < 0) a += two_pi;
      if (a >= two_pi) a = 0.0;
    }
    // Duplicate and antipodal pairs both collapse to the same angle mod pi.
    std::vector<double> e;
    e.reserve(angles_.size());
    for (double a : angles_) e.push_back(std::fmod(a, std::numbers::pi));
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
      if (e[i + 1] - e[i] <= kAngleTolerance) {
        throw NonGeneric("circle configuration has two equal or antipodal angles (mod pi: " + std::to_string(e[i]) +
                         ")");
      }
    }
    if (e.size() > 1 && e.front() + std::numbers::pi - e.back() <= kAngleTolerance) {
      throw NonGeneric("circle configuration has two equal or antipodal angles (wrapping at pi)");
    }
  }

  /// Angles of the points of an S^1 configuration.
  static CircleConfiguration from_configuration(const Configuration& c) {
    if (c.dim() != 1) throw DimensionMismatch("CircleConfiguration: configuration is not on S^1");
    std::vector<double> a;
    a.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) a.push_back(std::atan2(c.point(i)[1], c.point(i)[0]));
    return CircleConfiguration(std::move(a));
  }

  std::size_t size() const { return angles_.size(); }
  std::span<const double> angles() const { return angles_; }

  /// The points (cos a, sin a) on S^1.
  Configuration embed() const {
    std::vector<double> packed;
    packed.reserve(2 * angles_.size());
    for (double a : angles_) {
      packed.push_back(std::cos(a));
      packed.push_back(std::sin(a));
    }
    return Configuration(1, std::move(packed));
  }

 private:
  std::vector<double> angles_;
};

struct SweepSequence {
  std::vector<int> counts;
};

namespace detail {

// Crossing events of a half-turn sweep, ordered by crossing angle. `inside`
// is whether the point starts in the open semicircle (phi0, phi0 + pi).
struct SweepEvents {
  std::vector<bool> inside;
};

inline SweepEvents sweep_events(const CircleConfiguration& c) {
  const double pi = std::numbers::pi;
  const auto angles = c.angles();
  const std::size_t n = angles.size();

  std::vector<double> e;
  e.reserve(n);
  for (double a : angles) e.push_back(std::fmod(a, pi));

  // The diameter starts at angle 0 unless a point sits on it; then it starts
  // in the middle of the widest gap between crossing angles.
  double phi0 = 0.0;
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  if (*lo <= kAngleTolerance || pi - *hi <= kAngleTolerance) {
    std::vector<double> s(e);
    std::sort(s.begin(), s.end());
    double widest = s.front() + pi - s.back();
    double mid = std::fmod(s.back() + widest / 2, pi);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i + 1] - s[i] > widest) {
        widest = s[i + 1] - s[i];
        mid = s[i] + widest / 2;
      }
    }
    phi0 = mid;
  }

  std::vector<std::pair<double, bool>> ev;
  ev.reserve(n);
  for (double a : angles) {
    double t = std::fmod(a - phi0 + 2 * pi, 2 * pi);
    const bool in = t < pi;
    ev.emplace_back(in ? t : t - pi, in);
  }
  std::sort(ev.begin(), ev.end());
  SweepEvents out;
  out.inside.reserve(n);
  for (const auto& [_, in] : ev) out.inside.push_back(in);
  return out;
}

// Allowed sweep counts for n points: [k, k+1] for n = 2k+1, [k, k+2] for n = 2k+2.
inline std::pair<int, int> balanced_range(std::size_t n) {
  const int k = static_cast<int>((n - 1) / 2);
  return {k, n % 2 == 1 ? k + 1 : k + 2};
}

}  // namespace detail

/// Occupancy of the open semicircle to the left of a diameter rotating through
/// half a turn: the initial count, then the count after each crossing.
inline SweepSequence sweep_sequence(const CircleConfiguration& c) {
  const auto ev = detail::sweep_events(c);
  SweepSequence s;
  s.counts.reserve(ev.inside.size() + 1);
  int count = static_cast<int>(std::count(ev.inside.begin(), ev.inside.end(), true));
  s.counts.push_back(count);
  for (bool in : ev.inside) {
    count += in ? -1 : 1;
    s.counts.push_back(count);
  }
  return s;
}

inline bool is_balanced_circle(const CircleConfiguration& c) {
  const auto [lo, hi] = detail::balanced_range(c.size());
  const auto s = sweep_sequence(c);
  return std::all_of(s.counts.begin(), s.counts.end(), [lo = lo, hi = hi](int v) { return lo <= v && v <= hi; });
}

/// Over all 2^n ways of replacing points by their antipodes, the number of
/// balanced results.
inline std::uint64_t flip_enumeration_count(const CircleConfiguration& c) {
  const std::size_t n = c.size();
  if (n > kFlipEnumerationLimit) {
    throw BudgetExceeded("flip_enumeration_count: n = " + std::to_string(n) + " exceeds the limit of " +
                         std::to_string(kFlipEnumerationLimit));
  }
  const auto ev = detail::sweep_events(c);
  const auto [lo, hi] = detail::balanced_range(n);
  std::uint32_t base = 0;
  for (std::size_t j = 0; j < n; ++j) base |= static_cast<std::uint32_t>(ev.inside[j]) << j;

  std::uint64_t balanced = 0;
  const std::uint32_t total = std::uint32_t{1} << n;
  for (std::uint32_t flips = 0; flips < total; ++flips) {
    const std::uint32_t inside = base ^ flips;
    int count = std::popcount(inside);
    bool ok = lo <= count && count <= hi;
    for (std::size_t j = 0; ok && j < n; ++j) {
      count += ((inside >> j) & 1u) ? -1 : 1;
      ok = lo <= count && count <= hi;
    }
    balanced += ok;
  }
  return balanced;
}

}  // namespace hemi
