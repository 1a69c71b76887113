#pragma once

// Monte Carlo estimation of p(N, n).
//
// Trial i draws from its own stream, seeded from (seed, i), so the success
// count depends only on (N, n, trials, seed) and not on how trials are split
// across worker threads.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hemi/geometry.hpp"
#include "hemi/hemisphere.hpp"

namespace hemi {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** (Blackman and Vigna), seeded through splitmix64.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed = 0) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  /// Stream for trial `index` of a run seeded with `seed`.
  static Xoshiro256 for_trial(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t a = seed;
    std::uint64_t b = index ^ 0xd1b54a32d192ed03ULL;
    return Xoshiro256(splitmix64(a) ^ splitmix64(b));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  friend bool operator==(const Xoshiro256&, const Xoshiro256&) = default;

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

struct MonteCarloEstimate {
  std::size_t dim = 0;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double sigma_p = 0.0;                     // binomial (Wald) standard error of p_hat
  std::optional<double> inv_p_hat;          // trials / successes
  std::optional<double> precision_3sigma;   // 3 sigma of 1/p from the Poisson error on successes
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
};

/// n independent uniform points on S^dim.
template <class Rng>
Configuration sample_configuration(std::size_t dim, std::size_t n, Rng& rng) {
  std::vector<double> packed(n * (dim + 1));
  for (std::size_t i = 0; i < n; ++i) {
    detail::sample_unit_into(std::span<double>(packed).subspan(i * (dim + 1), dim + 1), rng);
  }
  return Configuration(dim, std::move(packed));
}

/// One Bernoulli trial: are n uniform points on S^dim equator-balanced?
/// Configurations with a point on some subset's great circle (a rounding
/// artifact) are redrawn.
template <class Rng>
bool trial(std::size_t dim, std::size_t n, Rng& rng, double tol = kDefaultTolerance) {
  if (n <= dim + 1) return true;
  for (;;) {
    const auto c = sample_configuration(dim, n, rng);
    const auto scan = detail::balance_scan(c, tol);
    if (scan.status != detail::BalanceStatus::NotGeneric) return scan.status == detail::BalanceStatus::Balanced;
  }
}

/// 3-sigma uncertainty of 1/p estimated as trials/successes, treating the
/// success count as Poisson: 3 * trials / successes^(3/2).
inline double precision_check(std::uint64_t trials, std::uint64_t successes) {
  if (successes == 0) throw std::invalid_argument("precision_check: no successes");
  const double s = static_cast<double>(successes);
  return 3.0 * static_cast<double>(trials) / (s * std::sqrt(s));
}

inline MonteCarloEstimate summarize(std::size_t dim, std::size_t n, std::uint64_t trials, std::uint64_t successes,
                                    std::uint64_t seed, double elapsed_seconds = 0.0) {
  MonteCarloEstimate e;
  e.dim = dim;
  e.n = n;
  e.trials = trials;
  e.successes = successes;
  e.seed = seed;
  e.elapsed_seconds = elapsed_seconds;
  e.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
  e.sigma_p = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
  if (successes > 0) {
    e.inv_p_hat = static_cast<double>(trials) / static_cast<double>(successes);
    e.precision_3sigma = precision_check(trials, successes);
  }
  return e;
}

/// Runs `trials` independent trials on `workers` threads; each worker owns a
/// contiguous range of trial indices.
inline MonteCarloEstimate estimate(std::size_t dim, std::size_t n, std::uint64_t trials, std::uint64_t seed,
                                   std::size_t workers = 1, double tol = kDefaultTolerance) {
  if (dim < 1) throw std::invalid_argument("estimate: dimension must be >= 1");
  if (n < 1) throw std::invalid_argument("estimate: need at least one point");
  if (trials < 1) throw std::invalid_argument("estimate: trials must be >= 1");
  if (workers < 1) throw std::invalid_argument("estimate: workers must be >= 1");
  workers = static_cast<std::size_t>(std::min<std::uint64_t>(workers, trials));

  const auto start = std::chrono::steady_clock::now();
  auto run_range = [=](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t ok = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      auto rng = Xoshiro256::for_trial(seed, i);
      ok += trial(dim, n, rng, tol);
    }
    return ok;
  };

  std::uint64_t successes = 0;
  if (workers == 1) {
    successes = run_range(0, trials);
  } else {
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = trials * w / workers;
      const std::uint64_t end = trials * (w + 1) / workers;
      pool.emplace_back([&partial, &run_range, w, begin, end] { partial[w] = run_range(begin, end); });
    }
    pool.clear();
    for (auto p : partial) successes += p;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summarize(dim, n, trials, successes, seed, elapsed);
}

}  // namespace hemi
