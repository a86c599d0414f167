#pragma once

// Moving matchings between Z-invariant plane diagrams and their quotients.
//
// A Z-invariant diagram is given by its classes: class i stands for the
// points rep_i + (n, n), n in Z. A matching between two such diagrams is
// stored as orbits modulo a period: the orbit (a, r, b, s) matches
//     A_a + (n, n)  with  B_b + (n + s, n + s)   for every n = r (mod period).
// With period 1 every orbit is translation-closed. A larger period allows
// classes whose representatives are only partly matched, or matched into
// several different classes.

#include "circpers/matching.hpp"
#include "circpers/metric_plane.hpp"
#include "circpers/metric_quotient.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace circpers {

struct OrbitPair {
  std::size_t a;
  std::int64_t residue;
  std::size_t b;
  std::int64_t shift;
  friend bool operator==(const OrbitPair &, const OrbitPair &) = default;
  friend auto operator<=>(const OrbitPair &, const OrbitPair &) = default;
};

namespace detail {
inline std::int64_t mod(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }
} // namespace detail

struct InvariantMatching {
  std::vector<QuotientPoint> classes_a;
  std::vector<QuotientPoint> classes_b;
  std::int64_t period = 1;
  std::vector<OrbitPair> pairs;

  /// Residue of B_b's representatives that the orbit reaches.
  std::int64_t b_residue(const OrbitPair &p) const { return detail::mod(p.residue + p.shift, period); }

  /// Throws InputError unless the induced plane matching is injective.
  void validate() const {
    if (period < 1) throw InputError("matching period must be >= 1");
    std::vector<std::vector<bool>> used_a(classes_a.size(), std::vector<bool>(period, false));
    std::vector<std::vector<bool>> used_b(classes_b.size(), std::vector<bool>(period, false));
    for (const auto &p : pairs) {
      if (p.a >= classes_a.size()) throw InputError("orbit references A class " + std::to_string(p.a));
      if (p.b >= classes_b.size()) throw InputError("orbit references B class " + std::to_string(p.b));
      if (p.residue < 0 || p.residue >= period) throw InputError("orbit residue outside [0, period)");
      auto rb = b_residue(p);
      if (used_a[p.a][p.residue])
        throw InputError("A class " + std::to_string(p.a) + " residue " + std::to_string(p.residue) +
                         " matched twice");
      if (used_b[p.b][rb])
        throw InputError("B class " + std::to_string(p.b) + " residue " + std::to_string(rb) + " matched twice");
      used_a[p.a][p.residue] = true;
      used_b[p.b][rb] = true;
    }
  }

  std::vector<bool> fully_matched_a() const { return coverage(true) ; }
  std::vector<bool> fully_matched_b() const { return coverage(false); }

  /// Number of matched residues per class.
  std::vector<std::int64_t> matched_count_a() const {
    std::vector<std::int64_t> c(classes_a.size(), 0);
    for (const auto &p : pairs) ++c[p.a];
    return c;
  }
  std::vector<std::int64_t> matched_count_b() const {
    std::vector<std::int64_t> c(classes_b.size(), 0);
    for (const auto &p : pairs) ++c[p.b];
    return c;
  }

  /// The plane pairs with A-side translate n in [-window, window].
  std::vector<std::pair<PlanePoint, PlanePoint>> plane_pairs(std::int64_t window) const {
    std::vector<std::pair<PlanePoint, PlanePoint>> out;
    for (std::int64_t n = -window; n <= window; ++n)
      for (const auto &p : pairs)
        if (detail::mod(n, period) == p.residue)
          out.emplace_back(classes_a[p.a].representative(n), classes_b[p.b].representative(n + p.shift));
    return out;
  }

  /// Whether the plane pairs with A-translate in [-window, window] use each
  /// element (class, translate) of either diagram at most once.
  bool injective_on_window(std::int64_t window) const {
    std::set<std::pair<std::size_t, std::int64_t>> seen_a, seen_b;
    for (std::int64_t n = -window; n <= window; ++n)
      for (const auto &p : pairs) {
        if (detail::mod(n, period) != p.residue) continue;
        if (!seen_a.insert({p.a, n}).second || !seen_b.insert({p.b, n + p.shift}).second) return false;
      }
    return true;
  }

private:
  std::vector<bool> coverage(bool side_a) const {
    auto counts = side_a ? matched_count_a() : matched_count_b();
    std::vector<bool> full(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) full[i] = counts[i] == period;
    return full;
  }
};

/// Bottleneck cost of the plane matching M induces; every term is
/// translation-invariant, so one representative per orbit suffices.
inline Extended invariant_cost(const InvariantMatching &M) {
  M.validate();
  Extended cost(0);
  for (const auto &p : M.pairs)
    cost = std::max(cost, linf(M.classes_a[p.a].representative(0), M.classes_b[p.b].representative(p.shift)));
  auto ca = M.matched_count_a();
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i] < M.period) cost = std::max(cost, Extended(diag_cost_quotient(M.classes_a[i])));
  auto cb = M.matched_count_b();
  for (std::size_t j = 0; j < cb.size(); ++j)
    if (cb[j] < M.period) cost = std::max(cost, Extended(diag_cost_quotient(M.classes_b[j])));
  return cost;
}

namespace detail {

/// Injective choice of a partner class for every fully matched class on one
/// side. Candidates are the classes its representatives are matched into,
/// tried by cheapest representative pair, then lowest index.
inline std::vector<std::size_t> choose_partners(const std::vector<bool> &full, std::size_t other_size,
                                                const std::map<std::pair<std::size_t, std::size_t>, Rational> &cost) {
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < full.size(); ++i)
    if (full[i]) members.push_back(i);

  BipartiteGraph g(members.size(), other_size);
  for (std::size_t m = 0; m < members.size(); ++m) {
    std::vector<std::pair<Rational, std::size_t>> options;
    for (const auto &[key, c] : cost)
      if (key.first == members[m]) options.emplace_back(c, key.second);
    std::sort(options.begin(), options.end());
    for (const auto &[c, j] : options) g.add_edge(m, j);
  }
  if (g.maximum_matching() != members.size())
    throw std::logic_error("fully matched classes admit no injective choice of partners");

  std::vector<std::size_t> partner(full.size(), BipartiteGraph::none);
  for (std::size_t m = 0; m < members.size(); ++m) partner[members[m]] = g.mate_of_left(m);
  return partner;
}

} // namespace detail

/// Quotient matching extracted from a Z-invariant one.
///
/// tau sends each fully matched A class to a B class its points are matched
/// into, theta does the same from fully matched B classes. Pairs are read off
/// alternating chains a, tau(a), theta(tau(a)), ... started at fully matched
/// A classes outside the image of theta; fully matched B classes left over are
/// paired with their theta-image. Every fully matched class ends up matched,
/// and every pair comes from some pair of the plane matching.
inline PartialMatching project_matching(const InvariantMatching &M) {
  M.validate();
  const std::size_t na = M.classes_a.size();
  const std::size_t nb = M.classes_b.size();
  constexpr auto none = BipartiteGraph::none;

  std::map<std::pair<std::size_t, std::size_t>, Rational> ab_cost, ba_cost;
  for (const auto &p : M.pairs) {
    Rational c = linf(M.classes_a[p.a].representative(0), M.classes_b[p.b].representative(p.shift)).value();
    auto key = std::make_pair(p.a, p.b);
    if (auto it = ab_cost.find(key); it == ab_cost.end() || c < it->second) ab_cost[key] = c;
    auto rkey = std::make_pair(p.b, p.a);
    if (auto it = ba_cost.find(rkey); it == ba_cost.end() || c < it->second) ba_cost[rkey] = c;
  }

  auto full_a = M.fully_matched_a();
  auto full_b = M.fully_matched_b();
  auto tau = detail::choose_partners(full_a, nb, ab_cost);
  auto theta = detail::choose_partners(full_b, na, ba_cost);

  std::vector<bool> in_theta_image(na, false);
  for (std::size_t j = 0; j < nb; ++j)
    if (theta[j] != none) in_theta_image[theta[j]] = true;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> b_used(nb, false);
  std::vector<bool> a_visited(na, false);
  for (std::size_t start = 0; start < na; ++start) {
    if (!full_a[start] || in_theta_image[start]) continue;
    std::size_t a = start;
    for (;;) {
      if (a_visited[a]) throw std::logic_error("matching chain revisited a class");
      a_visited[a] = true;
      std::size_t b = tau[a];
      pairs.emplace_back(a, b);
      b_used[b] = true;
      if (theta[b] == none) break;      // chain ends at a B class that is not fully matched
      std::size_t next = theta[b];
      if (!full_a[next]) break;         // chain ends at an A class without tau
      a = next;
    }
  }
  for (std::size_t b = 0; b < nb; ++b) {
    if (theta[b] == none || b_used[b]) continue;
    if (a_visited[theta[b]]) throw std::logic_error("closing pair reuses a chain class");
    pairs.emplace_back(theta[b], b);
  }
  return PartialMatching::from_pairs(std::move(pairs), na, nb);
}

/// Ways in which P fails to be a projection of M; empty when P is valid,
/// every pair of P comes from a plane pair of M, and every class unmatched
/// in P has a representative unmatched in M.
inline std::vector<std::string> projection_violations(const InvariantMatching &M, const PartialMatching &P) {
  std::vector<std::string> out;
  try {
    P.validate(M.classes_a.size(), M.classes_b.size());
  } catch (const InputError &e) {
    out.push_back(std::string("not a partial matching: ") + e.what());
    return out;
  }
  for (auto [i, j] : P.pairs) {
    bool found = std::any_of(M.pairs.begin(), M.pairs.end(), [&](const OrbitPair &p) { return p.a == i && p.b == j; });
    if (!found) out.push_back("pair (" + std::to_string(i) + ", " + std::to_string(j) + ") has no plane pair behind it");
  }
  auto ca = M.matched_count_a();
  for (auto i : P.unmatched_a)
    if (ca[i] == M.period) out.push_back("A class " + std::to_string(i) + " unmatched but fully matched in the plane");
  auto cb = M.matched_count_b();
  for (auto j : P.unmatched_b)
    if (cb[j] == M.period) out.push_back("B class " + std::to_string(j) + " unmatched but fully matched in the plane");
  return out;
}

/// Z-invariant matching realising a quotient matching at equal cost: each
/// pair becomes the orbit through a closest pair of representatives.
inline InvariantMatching lift_matching(const QuotientDiagram &A, const QuotientDiagram &B, const PartialMatching &P) {
  P.validate(A.size(), B.size());
  InvariantMatching M{A.points, B.points, 1, {}};
  for (auto [i, j] : P.pairs) M.pairs.push_back({i, 0, j, quotient_linf(A.points[i], B.points[j]).shift});
  return M;
}

} // namespace circpers
