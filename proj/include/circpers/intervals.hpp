#pragma once

// Interval-decomposed persistence modules on the real line and on the circle
// R/Z, with their pointwise dimensions, structure maps, the lift of a circle
// module to a Z-periodic line module, and persistence diagrams.

#include "circpers/gf2.hpp"
#include "circpers/metric_plane.hpp"
#include "circpers/metric_quotient.hpp"
#include "circpers/rational.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace circpers {

enum class EndpointKind { Open, Closed };

inline std::string bracket_code(EndpointKind lo, EndpointKind hi) {
  std::string s;
  s += lo == EndpointKind::Open ? 'o' : 'c';
  s += hi == EndpointKind::Open ? 'o' : 'c';
  return s;
}

namespace detail {

inline bool above_lower(const Rational &x, const Rational &lo, EndpointKind kind) {
  return kind == EndpointKind::Closed ? lo <= x : lo < x;
}
inline bool below_upper(const Rational &x, const Rational &hi, EndpointKind kind) {
  return kind == EndpointKind::Closed ? x <= hi : x < hi;
}

/// Number of integers k with lo |<=| k |<=| hi, kinds deciding strictness.
inline std::int64_t count_integers(const Rational &lo, EndpointKind lo_kind, const Rational &hi,
                                   EndpointKind hi_kind) {
  std::int64_t first = ceil(lo);
  if (lo_kind == EndpointKind::Open && Rational(first) == lo) ++first;
  std::int64_t last = floor(hi);
  if (hi_kind == EndpointKind::Open && Rational(last) == hi) --last;
  return std::max<std::int64_t>(0, last - first + 1);
}

/// Smallest integer k with lo |<=| x + k.
inline std::int64_t first_translate(const Rational &x, const Rational &lo, EndpointKind lo_kind) {
  Rational d = lo - x;
  std::int64_t k = ceil(d);
  if (lo_kind == EndpointKind::Open && Rational(k) == d) ++k;
  return k;
}

} // namespace detail

/// The interval |lo, hi| on the extended real line.
class LineInterval {
public:
  LineInterval(Extended lo, Extended hi, EndpointKind lo_kind, EndpointKind hi_kind)
      : lo_(lo), hi_(hi), lo_kind_(lo_kind), hi_kind_(hi_kind) {
    if (!lo.finite() && lo_kind == EndpointKind::Closed) throw InputError("infinite endpoint must be open");
    if (!hi.finite() && hi_kind == EndpointKind::Closed) throw InputError("infinite endpoint must be open");
    if (lo.is_pos_inf() || hi.is_neg_inf()) throw InputError("interval endpoint on the wrong side of infinity");
    if (hi < lo) throw InputError("interval with lo > hi");
    if (lo == hi && (lo_kind == EndpointKind::Open || hi_kind == EndpointKind::Open))
      throw InputError("degenerate interval must be a closed singleton");
  }

  const Extended &lo() const { return lo_; }
  const Extended &hi() const { return hi_; }
  EndpointKind lo_kind() const { return lo_kind_; }
  EndpointKind hi_kind() const { return hi_kind_; }

  bool contains(const Rational &x) const {
    bool above = lo_.is_neg_inf() || (lo_.finite() && detail::above_lower(x, lo_.value(), lo_kind_));
    bool below = hi_.is_pos_inf() || (hi_.finite() && detail::below_upper(x, hi_.value(), hi_kind_));
    return above && below;
  }

  LineInterval translated(const Rational &by) const {
    auto shift = [&](const Extended &e) { return e.finite() ? Extended(e.value() + by) : e; };
    return {shift(lo_), shift(hi_), lo_kind_, hi_kind_};
  }

  friend bool operator==(const LineInterval &, const LineInterval &) = default;

private:
  Extended lo_;
  Extended hi_;
  EndpointKind lo_kind_;
  EndpointKind hi_kind_;
};

/// A class of finite intervals |lo, hi| under integer translation, stored
/// with 0 <= lo < 1. The length may exceed 1 (the interval winds).
class CircleInterval {
public:
  CircleInterval(Rational lo, Rational hi, EndpointKind lo_kind, EndpointKind hi_kind)
      : lo_kind_(lo_kind), hi_kind_(hi_kind) {
    if (hi < lo) throw InputError("interval with lo > hi");
    if (lo == hi && (lo_kind == EndpointKind::Open || hi_kind == EndpointKind::Open))
      throw InputError("degenerate interval must be a closed singleton");
    std::int64_t n = floor(lo);
    lo_ = lo - n;
    hi_ = hi - n;
  }

  const Rational &lo() const { return lo_; }
  const Rational &hi() const { return hi_; }
  EndpointKind lo_kind() const { return lo_kind_; }
  EndpointKind hi_kind() const { return hi_kind_; }
  Rational length() const { return hi_ - lo_; }

  /// Whether the real point x lies in the canonical representative.
  bool contains(const Rational &x) const {
    return detail::above_lower(x, lo_, lo_kind_) && detail::below_upper(x, hi_, hi_kind_);
  }

  /// The representative translated by k as a line interval.
  LineInterval translate(std::int64_t k) const { return {lo_ + k, hi_ + k, lo_kind_, hi_kind_}; }

  friend bool operator==(const CircleInterval &, const CircleInterval &) = default;

private:
  Rational lo_;
  Rational hi_;
  EndpointKind lo_kind_;
  EndpointKind hi_kind_;
};

struct LineModule {
  std::vector<LineInterval> intervals;
};

struct CircleModule {
  std::vector<CircleInterval> intervals;
};

/// One basis vector of a circle module at a point x: the summand it belongs
/// to and the integer k with x + k inside that summand's representative.
struct TranslateIndex {
  std::size_t interval;
  std::int64_t k;
  friend bool operator==(const TranslateIndex &, const TranslateIndex &) = default;
};

/// Canonical basis of V([x]): summands in order, translates ascending.
inline std::vector<TranslateIndex> basis_at(const CircleModule &m, const Rational &x) {
  std::vector<TranslateIndex> basis;
  for (std::size_t i = 0; i < m.intervals.size(); ++i) {
    const auto &I = m.intervals[i];
    for (std::int64_t k = detail::first_translate(x, I.lo(), I.lo_kind()); I.contains(x + k); ++k)
      basis.push_back({i, k});
  }
  return basis;
}

inline std::int64_t dim_at(const CircleModule &m, const Rational &x) {
  std::int64_t d = 0;
  for (const auto &I : m.intervals) d += detail::count_integers(I.lo() - x, I.lo_kind(), I.hi() - x, I.hi_kind());
  return d;
}

/// Dimension of a line module at x.
inline std::int64_t dim_at(const LineModule &m, const Rational &x) {
  return std::count_if(m.intervals.begin(), m.intervals.end(), [&](const auto &I) { return I.contains(x); });
}

/// Matrix of V([x],[y]) in the canonical bases; requires x < y < x + 1/2.
inline gf2::BitMatrix structure_map(const CircleModule &m, const Rational &x, const Rational &y) {
  if (!(x < y) || !(y - x < Rational(1, 2)))
    throw std::invalid_argument("structure_map: need x < y and y - x < 1/2");
  auto src = basis_at(m, x);
  auto dst = basis_at(m, y);
  gf2::BitMatrix out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  // z = x + k maps to z + (y - x) = y + k; the only admissible pair since
  // 0 < y - x < 1/2.
  for (std::size_t c = 0; c < src.size(); ++c) {
    auto it = std::find(dst.begin(), dst.end(), src[c]);
    if (it != dst.end()) out.set(static_cast<int>(it - dst.begin()), static_cast<int>(c), true);
  }
  return out;
}

/// Restriction of the Z-periodic lift to translates k in [-window, window].
inline LineModule lift_module(const CircleModule &m, std::int64_t window) {
  if (window < 1) throw std::invalid_argument("lift_module: window must be >= 1");
  LineModule out;
  for (const auto &I : m.intervals)
    for (std::int64_t k = -window; k <= window; ++k) out.intervals.push_back(I.translate(k));
  return out;
}

inline QuotientDiagram diagram_of(const CircleModule &m) {
  QuotientDiagram d;
  for (const auto &I : m.intervals) d.points.push_back(QuotientPoint(I.lo(), I.hi()));
  return d;
}

inline Diagram diagram_of_line(const LineModule &m) {
  Diagram d;
  for (const auto &I : m.intervals) d.points.push_back(PlanePoint(I.lo(), I.hi()));
  return d;
}

} // namespace circpers
