#pragma once

// L-infinity geometry of the extended plane and the bottleneck distance
// between persistence diagrams.

#include "circpers/matching.hpp"
#include "circpers/rational.hpp"

#include <vector>

namespace circpers {

/// A diagram point (birth, death) with birth <= death.
class PlanePoint {
public:
  PlanePoint(Extended a, Extended b) : a_(a), b_(b) {
    if (b < a) throw InputError("diagram point with birth > death");
    if (a == b && !a.finite()) throw InputError("diagram point at a corner of infinity");
    if (a.is_pos_inf() || b.is_neg_inf()) throw InputError("diagram point outside the upper half-plane");
  }

  const Extended &a() const { return a_; }
  const Extended &b() const { return b_; }

  friend bool operator==(const PlanePoint &, const PlanePoint &) = default;
  friend auto operator<=>(const PlanePoint &, const PlanePoint &) = default;

private:
  Extended a_;
  Extended b_;
};

struct Diagram {
  std::vector<PlanePoint> points;
  std::size_t size() const { return points.size(); }
};

inline Extended linf(const PlanePoint &p, const PlanePoint &q) {
  return std::max(abs_diff(p.a(), q.a()), abs_diff(p.b(), q.b()));
}

/// Cost of leaving p unmatched: half its persistence.
inline Extended diag_cost(const PlanePoint &p) { return half_length(p.a(), p.b()); }

inline Extended matching_cost(const Diagram &A, const Diagram &B, const PartialMatching &P) {
  return matching_cost_with(
      A.size(), B.size(), P, [&](std::size_t i, std::size_t j) { return linf(A.points[i], B.points[j]); },
      [&](std::size_t i) { return diag_cost(A.points[i]); }, [&](std::size_t j) { return diag_cost(B.points[j]); });
}

inline BottleneckResult bottleneck_plane(const Diagram &A, const Diagram &B) {
  return bottleneck_search(
      A.size(), B.size(), [&](std::size_t i, std::size_t j) { return linf(A.points[i], B.points[j]); },
      [&](std::size_t i) { return diag_cost(A.points[i]); }, [&](std::size_t j) { return diag_cost(B.points[j]); });
}

} // namespace circpers
