#pragma once

// The quotient plane R^2/~, where (x1, x2) ~ (x1 + n, x2 + n) for integer n,
// with its induced L-infinity metric and bottleneck distance.

#include "circpers/matching.hpp"
#include "circpers/metric_plane.hpp"
#include "circpers/rational.hpp"

#include <cstdint>
#include <vector>

namespace circpers {

/// Class of (a, b) under diagonal integer shifts; stored with 0 <= a < 1.
class QuotientPoint {
public:
  QuotientPoint(Rational a, Rational b) {
    if (b < a) throw InputError("diagram point with birth > death");
    std::int64_t n = floor(a);
    a_ = a - n;
    b_ = b - n;
  }

  const Rational &a() const { return a_; }
  const Rational &b() const { return b_; }
  Rational persistence() const { return b_ - a_; }

  /// The canonical representative shifted by n along the diagonal.
  PlanePoint representative(std::int64_t n = 0) const { return {a_ + n, b_ + n}; }

  static bool is_canonical(const Rational &a) { return 0 <= a && a < 1; }

  friend bool operator==(const QuotientPoint &, const QuotientPoint &) = default;
  friend bool operator<(const QuotientPoint &p, const QuotientPoint &q) {
    return p.a_ < q.a_ || (p.a_ == q.a_ && p.b_ < q.b_);
  }

private:
  Rational a_;
  Rational b_;
};

struct QuotientDiagram {
  std::vector<QuotientPoint> points;
  std::size_t size() const { return points.size(); }
};

struct QuotientDistance {
  Rational value;
  /// Shift n with linf(p.representative(), q.representative(n)) == value.
  std::int64_t shift;
};

/// min over n of linf(p, q + (n, n)), in closed form.
///
/// With u = p.a - q.a and v = p.b - q.b the objective max(|u - n|, |v - n|)
/// is convex in n with real minimiser (u + v) / 2, so one of the two
/// neighbouring integers attains the minimum. Ties pick the smaller shift.
inline QuotientDistance quotient_linf(const QuotientPoint &p, const QuotientPoint &q) {
  Rational u = p.a() - q.a();
  Rational v = p.b() - q.b();
  auto cost = [&](std::int64_t n) { return std::max(abs(u - n), abs(v - n)); };
  Rational mid = (u + v) / 2;
  std::int64_t lo = floor(mid);
  std::int64_t hi = ceil(mid);
  if (cost(hi) < cost(lo)) return {cost(hi), hi};
  return {cost(lo), lo};
}

inline Rational diag_cost_quotient(const QuotientPoint &p) { return p.persistence() / 2; }

inline Extended matching_cost_quotient(const QuotientDiagram &A, const QuotientDiagram &B,
                                       const PartialMatching &P) {
  return matching_cost_with(
      A.size(), B.size(), P,
      [&](std::size_t i, std::size_t j) { return Extended(quotient_linf(A.points[i], B.points[j]).value); },
      [&](std::size_t i) { return Extended(diag_cost_quotient(A.points[i])); },
      [&](std::size_t j) { return Extended(diag_cost_quotient(B.points[j])); });
}

inline BottleneckResult bottleneck_quotient(const QuotientDiagram &A, const QuotientDiagram &B) {
  return bottleneck_search(
      A.size(), B.size(),
      [&](std::size_t i, std::size_t j) { return Extended(quotient_linf(A.points[i], B.points[j]).value); },
      [&](std::size_t i) { return Extended(diag_cost_quotient(A.points[i])); },
      [&](std::size_t j) { return Extended(diag_cost_quotient(B.points[j])); });
}

} // namespace circpers
