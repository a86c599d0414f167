#pragma once

// Seeded generators for test instances.
//
// Only std::mt19937_64 and std::seed_seq are used, both fully specified by
// the standard; bounded draws use rejection sampling rather than
// std::uniform_int_distribution, whose output differs between library
// implementations. Identical seeds give identical instances everywhere.

#include "circpers/intervals.hpp"
#include "circpers/metric_plane.hpp"
#include "circpers/metric_quotient.hpp"
#include "circpers/rational.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace circpers {

using Rng = std::mt19937_64;

/// Generator for trial `index` of a run seeded with `seed`.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(Rng &rng, std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

inline EndpointKind random_kind(Rng &rng) { return uniform_int(rng, 0, 1) ? EndpointKind::Closed : EndpointKind::Open; }

/// Circle module with endpoints on the 1/n grid: the number of intervals is
/// uniform on {0..max_intervals}; each interval draws its start uniformly
/// from {0..n-1}/n, its length from {1..n}/n, then its two endpoint kinds.
inline CircleModule random_grid_circle_module(Rng &rng, int n, int max_intervals = 3) {
  CircleModule m;
  const auto count = uniform_int(rng, 0, max_intervals);
  for (std::int64_t i = 0; i < count; ++i) {
    Rational lo(uniform_int(rng, 0, n - 1), n);
    Rational hi = lo + Rational(uniform_int(rng, 1, n), n);
    auto lk = random_kind(rng);
    auto hk = random_kind(rng);
    m.intervals.emplace_back(lo, hi, lk, hk);
  }
  return m;
}

/// Rational with denominator `den` in [lo, hi] (both multiples of 1/den).
inline Rational random_rational(Rng &rng, std::int64_t lo_num, std::int64_t hi_num, std::int64_t den) {
  return Rational(uniform_int(rng, lo_num, hi_num), den);
}

/// Random finite quotient point with birth and persistence on a 1/den grid.
inline QuotientPoint random_quotient_point(Rng &rng, std::int64_t den = 20, std::int64_t max_persistence = 2) {
  Rational a = random_rational(rng, -2 * den, 2 * den, den);
  Rational len = random_rational(rng, 0, max_persistence * den, den);
  return {a, a + len};
}

inline QuotientDiagram random_quotient_diagram(Rng &rng, int max_points, std::int64_t den = 20) {
  QuotientDiagram d;
  const auto count = uniform_int(rng, 0, max_points);
  for (std::int64_t i = 0; i < count; ++i) d.points.push_back(random_quotient_point(rng, den));
  return d;
}

/// Random plane diagram; with probability 1/8 a coordinate is infinite.
inline Diagram random_plane_diagram(Rng &rng, int max_points, std::int64_t den = 10, bool allow_infinite = true) {
  Diagram d;
  const auto count = uniform_int(rng, 0, max_points);
  for (std::int64_t i = 0; i < count; ++i) {
    Rational a = random_rational(rng, -3 * den, 3 * den, den);
    Rational b = a + random_rational(rng, 0, 3 * den, den);
    const auto roll = allow_infinite ? uniform_int(rng, 0, 7) : 1;
    if (roll == 0)
      d.points.emplace_back(Extended::neg_inf(), b);
    else if (roll == 7)
      d.points.emplace_back(a, Extended::pos_inf());
    else
      d.points.emplace_back(a, b);
  }
  return d;
}

/// Finite line interval with integer endpoints in [0, window].
inline LineInterval random_window_interval(Rng &rng, int window) {
  for (;;) {
    auto p = uniform_int(rng, 0, window);
    auto q = uniform_int(rng, p, window);
    auto lk = random_kind(rng);
    auto hk = random_kind(rng);
    if (p == q && (lk == EndpointKind::Open || hk == EndpointKind::Open)) continue;
    return {Rational(p), Rational(q), lk, hk};
  }
}

} // namespace circpers
