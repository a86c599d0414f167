#pragma once

// Interleaving distances.
//
// For circle modules the distance is read off the quotient diagrams. The
// brute-force oracle below decides, independently of any diagram, whether
// two grid modules admit an interleaving of a given degree by searching
// morphism families over GF(2).
//
// Morphisms are periodic families on the lifted Z-periodic modules, so a
// degree s morphism is a map from node j to node j + s (mod N) at every j,
// for any s >= 0, and the internal 2s-shift of a module is the composite of
// 2s step maps, winding around the circle as often as needed.

#include "circpers/gf2.hpp"
#include "circpers/grid.hpp"
#include "circpers/intervals.hpp"
#include "circpers/metric_quotient.hpp"
#include "circpers/rational.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circpers {

/// Thrown when an exhaustive search would exceed its configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t default_budget = std::uint64_t{1} << 20;

/// A degree-`shift` family of maps: maps[j] goes from node j of the source
/// to node j + shift of the target.
struct GridMorphism {
  std::int64_t shift = 0;
  std::vector<gf2::BitMatrix> maps;

  static GridMorphism zero(const GridModule &src, const GridModule &dst, std::int64_t shift) {
    GridMorphism f{shift, {}};
    for (int j = 0; j < src.n; ++j) f.maps.emplace_back(dst.dim(j + shift), src.dims[j]);
    return f;
  }

  GridMorphism &operator^=(const GridMorphism &o) {
    for (std::size_t j = 0; j < maps.size(); ++j) maps[j] ^= o.maps[j];
    return *this;
  }

  friend bool operator==(const GridMorphism &, const GridMorphism &) = default;
};

/// Whether f commutes with all step maps.
inline bool is_morphism(const GridModule &src, const GridModule &dst, const GridMorphism &f) {
  if (static_cast<int>(f.maps.size()) != src.n) return false;
  for (int j = 0; j < src.n; ++j) {
    const auto &m = f.maps[j];
    if (m.cols() != src.dims[j] || m.rows() != dst.dim(j + f.shift)) return false;
  }
  for (int j = 0; j < src.n; ++j)
    if (f.maps[src.node(j + 1)] * src.steps[j] != dst.steps[dst.node(j + f.shift)] * f.maps[j]) return false;
  return true;
}

/// Whether (alpha, beta) is an interleaving: both are morphisms of the same
/// degree s and both round trips equal the internal 2s-shift maps.
inline bool is_interleaving(const GridModule &v, const GridModule &w, const GridMorphism &alpha,
                            const GridMorphism &beta) {
  if (alpha.shift != beta.shift || !is_morphism(v, w, alpha) || !is_morphism(w, v, beta)) return false;
  const auto s = alpha.shift;
  for (int j = 0; j < v.n; ++j) {
    if (beta.maps[w.node(j + s)] * alpha.maps[j] != v.shift_map(j, 2 * s)) return false;
    if (alpha.maps[v.node(j + s)] * beta.maps[j] != w.shift_map(j, 2 * s)) return false;
  }
  return true;
}

/// Basis of the space of degree-s morphisms from src to dst.
///
/// Unknowns are all matrix entries; each commutation square contributes one
/// homogeneous equation per entry.
inline std::vector<GridMorphism> hom_basis(const GridModule &src, const GridModule &dst, std::int64_t s) {
  const int n = src.n;
  std::vector<std::size_t> offset(n + 1, 0);
  for (int j = 0; j < n; ++j)
    offset[j + 1] = offset[j] + static_cast<std::size_t>(dst.dim(j + s)) * src.dims[j];
  const std::size_t unknowns = offset[n];
  auto var = [&](int j, int r, int c) { return offset[j] + static_cast<std::size_t>(r) * src.dims[j] + c; };

  gf2::LinearSystem system(unknowns);
  for (int j = 0; j < n; ++j) {
    // alpha[j+1] * src.step[j] + dst.step[j+s] * alpha[j] = 0
    const int j1 = src.node(j + 1);
    const auto &sstep = src.steps[j];
    const auto &dstep = dst.steps[dst.node(j + s)];
    const int rows = dst.dim(j + 1 + s);
    const int cols = src.dims[j];
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        gf2::BitVector eq(unknowns);
        for (int t = 0; t < src.dims[j1]; ++t)
          if (sstep.get(t, c)) eq.flip(var(j1, r, t));
        for (int t = 0; t < dst.dim(j + s); ++t)
          if (dstep.get(r, t)) eq.flip(var(j, t, c));
        system.add(std::move(eq), false);
      }
    }
  }

  std::vector<GridMorphism> basis;
  for (const auto &x : system.nullspace()) {
    auto f = GridMorphism::zero(src, dst, s);
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < f.maps[j].rows(); ++r)
        for (int c = 0; c < f.maps[j].cols(); ++c)
          if (x.get(var(j, r, c))) f.maps[j].set(r, c, true);
    basis.push_back(std::move(f));
  }
  return basis;
}

struct Interleaving {
  GridMorphism alpha;
  GridMorphism beta;
};

namespace detail {

/// Enumerates x in Hom^s(v, w) and, for each, solves the triangle identities
/// for y in Hom^s(w, v); the identities are linear in y once x is fixed.
/// Returns the first (x, y) found in Gray-code order of x.
inline std::optional<Interleaving> search_interleaving(const GridModule &v, const GridModule &w, std::int64_t s,
                                                       const std::vector<GridMorphism> &xs,
                                                       const std::vector<GridMorphism> &ys) {
  const int n = v.n;
  const int e = static_cast<int>(ys.size());
  if (e > 64) throw BudgetExceeded("morphism space of dimension " + std::to_string(e) + " exceeds 64");

  // Equation layout: first y[j+s] * x[j] = shift_v(j, 2s) entrywise, then
  // x[j+s] * y[j] = shift_w(j, 2s) entrywise.
  struct Block {
    int node;
    bool first;
    int rows;
    int cols;
    std::size_t offset;
  };
  std::vector<Block> blocks;
  std::size_t total = 0;
  for (int j = 0; j < n; ++j) {
    blocks.push_back({j, true, v.dim(j + 2 * s), v.dims[j], total});
    total += static_cast<std::size_t>(v.dim(j + 2 * s)) * v.dims[j];
  }
  for (int j = 0; j < n; ++j) {
    blocks.push_back({j, false, w.dim(j + 2 * s), w.dims[j], total});
    total += static_cast<std::size_t>(w.dim(j + 2 * s)) * w.dims[j];
  }

  std::vector<std::uint8_t> rhs(total, 0);
  for (const auto &b : blocks) {
    auto target = b.first ? v.shift_map(b.node, 2 * s) : w.shift_map(b.node, 2 * s);
    for (int r = 0; r < b.rows; ++r)
      for (int c = 0; c < b.cols; ++c) rhs[b.offset + r * b.cols + c] = target.get(r, c);
  }

  // contribution[g][eq] has bit l set when the equation's entry of the
  // product involving ys[l] and xs[g] is 1. The products are bilinear, so
  // the coefficients for x = sum of chosen xs[g] are XORs of these rows.
  std::vector<std::vector<std::uint64_t>> contribution(xs.size(), std::vector<std::uint64_t>(total, 0));
  for (std::size_t g = 0; g < xs.size(); ++g) {
    for (int l = 0; l < e; ++l) {
      const std::uint64_t bit = std::uint64_t{1} << l;
      for (const auto &b : blocks) {
        const int j = b.node;
        auto prod = b.first ? ys[l].maps[w.node(j + s)] * xs[g].maps[j] : xs[g].maps[v.node(j + s)] * ys[l].maps[j];
        for (int r = 0; r < b.rows; ++r)
          for (std::uint64_t bits = prod.row(r); bits; bits &= bits - 1)
            contribution[g][b.offset + r * b.cols + std::countr_zero(bits)] |= bit;
      }
    }
  }

  std::vector<std::uint64_t> coeffs(total, 0);
  const std::uint64_t count = std::uint64_t{1} << xs.size();
  for (std::uint64_t i = 0; i < count; ++i) {
    if (i > 0) {
      const auto g = static_cast<std::size_t>(std::countr_zero(i));
      for (std::size_t q = 0; q < total; ++q) coeffs[q] ^= contribution[g][q];
    }
    gf2::SmallSystem system(e);
    bool ok = true;
    for (std::size_t q = 0; q < total && ok; ++q) ok = system.add(coeffs[q], rhs[q]);
    if (!ok) continue;

    const std::uint64_t gray = i ^ (i >> 1);
    auto x = GridMorphism::zero(v, w, s);
    for (std::size_t g = 0; g < xs.size(); ++g)
      if (gray >> g & 1u) x ^= xs[g];
    auto y = GridMorphism::zero(w, v, s);
    const std::uint64_t sol = system.particular_solution();
    for (int l = 0; l < e; ++l)
      if (sol >> l & 1u) y ^= ys[l];
    return Interleaving{std::move(x), std::move(y)};
  }
  return std::nullopt;
}

inline bool shifts_vanish(const GridModule &g, std::int64_t length) {
  for (int j = 0; j < g.n; ++j)
    if (!g.shift_map(j, length).is_zero()) return false;
  return true;
}

} // namespace detail

/// Decides whether v and w are (s/N)-interleaved; returns a witness if so.
///
/// The side whose morphism space is smaller is enumerated exhaustively, and
/// the other side is solved for by Gaussian elimination. Throws
/// BudgetExceeded if the enumeration would exceed `budget` candidates.
inline std::optional<Interleaving> feasible_interleaving(const GridModule &v, const GridModule &w, std::int64_t s,
                                                         std::uint64_t budget = default_budget) {
  if (v.n != w.n) throw std::invalid_argument("feasible_interleaving: grid sizes differ");
  if (s < 0) throw std::invalid_argument("feasible_interleaving: negative shift");
  v.validate();
  w.validate();

  if (detail::shifts_vanish(v, 2 * s) && detail::shifts_vanish(w, 2 * s))
    return Interleaving{GridMorphism::zero(v, w, s), GridMorphism::zero(w, v, s)};

  auto vw = hom_basis(v, w, s);
  auto wv = hom_basis(w, v, s);
  const bool swap = wv.size() < vw.size();
  const std::size_t enumerated = swap ? wv.size() : vw.size();
  if (enumerated >= 64 || (std::uint64_t{1} << enumerated) > budget)
    throw BudgetExceeded("search space 2^" + std::to_string(enumerated) + " exceeds budget " +
                         std::to_string(budget));

  if (!swap) return detail::search_interleaving(v, w, s, vw, wv);
  auto found = detail::search_interleaving(w, v, s, wv, vw);
  if (!found) return std::nullopt;
  return Interleaving{std::move(found->beta), std::move(found->alpha)};
}

/// Smallest s/N at which v and w are interleaved, scanning s = 0, 1, ...
inline Rational bruteforce_distance(const GridModule &v, const GridModule &w,
                                    std::uint64_t budget = default_budget) {
  if (v.n != w.n) throw std::invalid_argument("bruteforce_distance: grid sizes differ");
  // Zero maps interleave once both 2s-shifts vanish.
  const std::int64_t longest = std::max(nilpotency_length(v), nilpotency_length(w));
  const std::int64_t last = (longest + 1) / 2;
  for (std::int64_t s = 0; s < last; ++s)
    if (feasible_interleaving(v, w, s, budget)) return Rational(s, v.n);
  return Rational(last, v.n);
}

/// Interleaving distance of two single line intervals.
inline Extended interval_distance_line(const LineInterval &I, const LineInterval &J) {
  Extended translate = std::max(abs_diff(I.lo(), J.lo()), abs_diff(I.hi(), J.hi()));
  Extended vanish = std::max(half_length(I.lo(), I.hi()), half_length(J.lo(), J.hi()));
  return std::min(translate, vanish);
}

/// Interleaving distance of two circle modules, via their quotient diagrams.
inline Rational interleaving_distance_circle(const CircleModule &v, const CircleModule &w) {
  return bottleneck_quotient(diagram_of(v), diagram_of(w)).value.value();
}

/// Grid oracle for two finite line intervals with integer endpoints.
///
/// The intervals are placed on a circle of circumference 4 * window grid
/// steps, far enough apart from their own translates that no morphism of
/// relevant degree can reach one; the result is in grid steps.
inline Rational line_grid_distance(const LineInterval &I, const LineInterval &J, int window,
                                   std::uint64_t budget = default_budget) {
  const int n = 4 * window;
  auto place = [&](const LineInterval &K) {
    if (!K.lo().finite() || !K.hi().finite()) throw std::invalid_argument("line_grid_distance: infinite endpoint");
    for (const auto &e : {K.lo().value(), K.hi().value()})
      if (e.denominator() != 1 || e < 0 || e > window)
        throw std::invalid_argument("line_grid_distance: endpoint outside the integer window");
    return CircleModule{{CircleInterval(K.lo().value() / n, K.hi().value() / n, K.lo_kind(), K.hi_kind())}};
  };
  return bruteforce_distance(to_grid(place(I), n), to_grid(place(J), n), budget) * n;
}

struct DirectSumBound {
  Rational combined;
  Rational first;
  Rational second;
  bool holds() const { return combined <= std::max(first, second); }
};

/// Compares d(V1 + V2, W1 + W2) with max(d(V1, W1), d(V2, W2)) on the grid.
inline DirectSumBound max_direct_sum_bound_check(const GridModule &v1, const GridModule &w1, const GridModule &v2,
                                                 const GridModule &w2, std::uint64_t budget = default_budget) {
  if (v1.n != w1.n || v1.n != v2.n || v1.n != w2.n)
    throw std::invalid_argument("max_direct_sum_bound_check: grid sizes differ");
  return {bruteforce_distance(direct_sum(v1, v2), direct_sum(w1, w2), budget), bruteforce_distance(v1, w1, budget),
          bruteforce_distance(v2, w2, budget)};
}

} // namespace circpers
