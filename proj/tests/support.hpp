#pragma once

// Random instances shared by the unit tests and the acceptance binary.

#include "circpers/circpers.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace support {

using namespace circpers;

/// Random partial matching between index sets of the given sizes.
inline PartialMatching random_partial_matching(Rng &rng, std::size_t na, std::size_t nb) {
  std::vector<std::size_t> order(nb);
  for (std::size_t j = 0; j < nb; ++j) order[j] = j;
  for (std::size_t j = nb; j > 1; --j) std::swap(order[j - 1], order[uniform_int(rng, 0, j - 1)]);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < std::min(na, nb); ++i)
    if (uniform_int(rng, 0, 3) != 0) pairs.emplace_back(i, order[i]);
  return PartialMatching::from_pairs(std::move(pairs), na, nb);
}

/// Random Z-invariant matching of the given period. Whole classes are
/// often matched orbit by orbit into one partner, and single residues are
/// scattered across partners, so fully and partly matched classes both
/// occur and partner choices can form long chains.
inline InvariantMatching random_invariant_matching(Rng &rng, const QuotientDiagram &A, const QuotientDiagram &B,
                                                   std::int64_t period) {
  InvariantMatching M{A.points, B.points, period, {}};
  if (A.size() == 0 || B.size() == 0) return M;
  std::vector<std::vector<bool>> used_a(A.size(), std::vector<bool>(period, false));
  std::vector<std::vector<bool>> used_b(B.size(), std::vector<bool>(period, false));
  auto try_add = [&](std::size_t a, std::int64_t r, std::size_t b, std::int64_t shift) {
    auto rb = ((r + shift) % period + period) % period;
    if (used_a[a][r] || used_b[b][rb]) return false;
    used_a[a][r] = used_b[b][rb] = true;
    M.pairs.push_back({a, r, b, shift});
    return true;
  };
  const auto attempts = uniform_int(rng, 0, 3 * static_cast<std::int64_t>(A.size() * period));
  for (std::int64_t t = 0; t < attempts; ++t) {
    auto a = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(A.size()) - 1));
    auto b = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(B.size()) - 1));
    auto shift = uniform_int(rng, -2, 2);
    if (uniform_int(rng, 0, 2) == 0) {
      // whole orbit class into class, if every residue is free on both sides
      bool free = true;
      for (std::int64_t r = 0; r < period; ++r)
        free = free && !used_a[a][r] && !used_b[b][((r + shift) % period + period) % period];
      if (free)
        for (std::int64_t r = 0; r < period; ++r) try_add(a, r, b, shift);
    } else {
      try_add(a, uniform_int(rng, 0, period - 1), b, shift);
    }
  }
  std::sort(M.pairs.begin(), M.pairs.end());
  return M;
}

/// Ways in which P fails invariants (i) and (ii) relative to M, checked
/// directly on the plane pairs of one period.
inline std::vector<std::string> projection_failures(const InvariantMatching &M, const PartialMatching &P) {
  std::vector<std::string> out;
  auto plane_pair_exists = [&](std::size_t i, std::size_t j) {
    return std::any_of(M.pairs.begin(), M.pairs.end(), [&](const OrbitPair &p) { return p.a == i && p.b == j; });
  };
  auto unmatched_rep = [&](bool side_a, std::size_t c) {
    for (std::int64_t n = 0; n < M.period; ++n) {
      bool hit = false;
      for (const auto &p : M.pairs) {
        if (side_a && p.a == c && p.residue == n) hit = true;
        if (!side_a && p.b == c && M.b_residue(p) == n) hit = true;
      }
      if (!hit) return true;
    }
    return false;
  };
  for (auto [i, j] : P.pairs)
    if (!plane_pair_exists(i, j)) out.push_back("pair without plane pair");
  for (auto i : P.unmatched_a)
    if (!unmatched_rep(true, i)) out.push_back("A class unmatched without unmatched representative");
  for (auto j : P.unmatched_b)
    if (!unmatched_rep(false, j)) out.push_back("B class unmatched without unmatched representative");
  return out;
}

/// Cost of the plane matching M induces on translates n in [-window, window],
/// evaluated pair by pair; equals the invariant cost for any window >= period.
inline Extended windowed_plane_cost(const InvariantMatching &M, std::int64_t window) {
  Extended cost(0);
  for (const auto &[p, q] : M.plane_pairs(window)) cost = std::max(cost, linf(p, q));
  auto ca = M.matched_count_a();
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i] < M.period) cost = std::max(cost, diag_cost(M.classes_a[i].representative(0)));
  auto cb = M.matched_count_b();
  for (std::size_t j = 0; j < cb.size(); ++j)
    if (cb[j] < M.period) cost = std::max(cost, diag_cost(M.classes_b[j].representative(0)));
  return cost;
}

} // namespace support
