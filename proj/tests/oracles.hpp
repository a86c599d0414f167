#pragma once

// Slow reference computations used to freeze expected values. None of them
// share code paths with the algorithms they check.

#include "circpers/circpers.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using namespace circpers;

/// Minimum bottleneck cost over every partial matching, by recursion over
/// the A side: each A point takes an unused B point or stays unmatched.
inline Extended enumerate_bottleneck(std::size_t na, std::size_t nb,
                                     const std::function<Extended(std::size_t, std::size_t)> &pair_cost,
                                     const std::function<Extended(std::size_t)> &diag_a,
                                     const std::function<Extended(std::size_t)> &diag_b) {
  Extended best = Extended::pos_inf();
  bool any = false;
  std::vector<bool> used(nb, false);
  std::function<void(std::size_t, Extended)> go = [&](std::size_t i, Extended cost) {
    if (i == na) {
      for (std::size_t j = 0; j < nb; ++j)
        if (!used[j]) cost = std::max(cost, diag_b(j));
      if (!any || cost < best) best = cost;
      any = true;
      return;
    }
    go(i + 1, std::max(cost, diag_a(i)));
    for (std::size_t j = 0; j < nb; ++j) {
      if (used[j]) continue;
      used[j] = true;
      go(i + 1, std::max(cost, pair_cost(i, j)));
      used[j] = false;
    }
  };
  go(0, Extended(0));
  return best;
}

/// Plane L-infinity distance written out coordinate by coordinate.
inline Extended plane_linf(const PlanePoint &p, const PlanePoint &q) {
  auto coord = [](const Extended &x, const Extended &y) -> Extended {
    if (x.finite() && y.finite()) {
      Rational d = x.value() - y.value();
      return d < 0 ? -d : d;
    }
    if (x.kind() == y.kind()) return Rational(0);
    return Extended::pos_inf();
  };
  auto s = coord(p.a(), q.a());
  auto t = coord(p.b(), q.b());
  return s < t ? t : s;
}

inline Extended plane_diag(const PlanePoint &p) {
  if (!p.a().finite() || !p.b().finite()) return Extended::pos_inf();
  return (p.b().value() - p.a().value()) / 2;
}

inline Extended plane_bottleneck(const Diagram &A, const Diagram &B) {
  return enumerate_bottleneck(
      A.size(), B.size(), [&](std::size_t i, std::size_t j) { return plane_linf(A.points[i], B.points[j]); },
      [&](std::size_t i) { return plane_diag(A.points[i]); }, [&](std::size_t j) { return plane_diag(B.points[j]); });
}

/// Minimum of linf over representative pairs (p, q + (k, k)) in the window
/// |k| <= ceil(max(|u|, |v|)) + 1, u and v the coordinate differences.
inline Rational window_quotient_linf(const QuotientPoint &p, const QuotientPoint &q) {
  Rational u = p.a() - q.a();
  Rational v = p.b() - q.b();
  auto mag = [](Rational r) { return r < 0 ? -r : r; };
  std::int64_t window = ceil(std::max(mag(u), mag(v))) + 1;
  Rational best = -1;
  for (std::int64_t k = -window; k <= window; ++k) {
    Rational c = plane_linf(PlanePoint(p.a(), p.b()), PlanePoint(q.a() + k, q.b() + k)).value();
    if (best < 0 || c < best) best = c;
  }
  return best;
}

inline Extended quotient_bottleneck(const QuotientDiagram &A, const QuotientDiagram &B) {
  return enumerate_bottleneck(
      A.size(), B.size(),
      [&](std::size_t i, std::size_t j) { return Extended(window_quotient_linf(A.points[i], B.points[j])); },
      [&](std::size_t i) { return Extended(A.points[i].persistence() / 2); },
      [&](std::size_t j) { return Extended(B.points[j].persistence() / 2); });
}

/// Number of integers k with x + k in the representative, by scanning every
/// k in a window that contains all candidates.
inline std::int64_t enumerate_dim(const CircleModule &m, const Rational &x) {
  std::int64_t total = 0;
  for (const auto &I : m.intervals) {
    const std::int64_t reach = ceil(I.length()) + (x < 0 ? ceil(-x) : ceil(x)) + 3;
    for (std::int64_t k = -reach; k <= reach; ++k)
      if (I.contains(x + k)) ++total;
  }
  return total;
}

/// Whether two grid modules are s-interleaved, by testing every pair from
/// the two morphism spaces. Exponential in both dimensions.
inline bool product_search(const GridModule &v, const GridModule &w, std::int64_t s) {
  auto xs = hom_basis(v, w, s);
  auto ys = hom_basis(w, v, s);
  auto combine = [](const GridModule &src, const GridModule &dst, std::int64_t shift,
                    const std::vector<GridMorphism> &basis, std::uint64_t mask) {
    auto f = GridMorphism::zero(src, dst, shift);
    for (std::size_t g = 0; g < basis.size(); ++g)
      if (mask >> g & 1u) f ^= basis[g];
    return f;
  };
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << xs.size()); ++i) {
    auto x = combine(v, w, s, xs, i);
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << ys.size()); ++j)
      if (is_interleaving(v, w, x, combine(w, v, s, ys, j))) return true;
  }
  return false;
}

/// Every degree-s family of matrices that commutes with the steps, found by
/// trying all families. Only for tiny modules.
inline std::uint64_t count_morphisms(const GridModule &src, const GridModule &dst, std::int64_t s) {
  std::size_t bits = 0;
  for (int j = 0; j < src.n; ++j) bits += static_cast<std::size_t>(dst.dim(j + s)) * src.dims[j];
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    auto f = GridMorphism::zero(src, dst, s);
    std::size_t bit = 0;
    for (int j = 0; j < src.n; ++j)
      for (int r = 0; r < f.maps[j].rows(); ++r)
        for (int c = 0; c < f.maps[j].cols(); ++c) f.maps[j].set(r, c, mask >> bit++ & 1u);
    if (is_morphism(src, dst, f)) ++count;
  }
  return count;
}

} // namespace oracle
