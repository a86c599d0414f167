#pragma once

// Partial matchings, maximum bipartite matching, and the threshold search
// shared by the plane and quotient bottleneck distances.

#include "circpers/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace circpers {

/// A partial matching between index sets {0..nA-1} and {0..nB-1}.
struct PartialMatching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> unmatched_a;
  std::vector<std::size_t> unmatched_b;

  /// Builds the matching from its pairs; everything else is unmatched.
  static PartialMatching from_pairs(std::vector<std::pair<std::size_t, std::size_t>> pairs, std::size_t na,
                                    std::size_t nb) {
    PartialMatching p;
    std::vector<bool> used_a(na, false), used_b(nb, false);
    for (auto [i, j] : pairs) {
      if (i >= na || j >= nb) throw std::out_of_range("matching pair index out of range");
      used_a[i] = true;
      used_b[j] = true;
    }
    for (std::size_t i = 0; i < na; ++i)
      if (!used_a[i]) p.unmatched_a.push_back(i);
    for (std::size_t j = 0; j < nb; ++j)
      if (!used_b[j]) p.unmatched_b.push_back(j);
    std::sort(pairs.begin(), pairs.end());
    p.pairs = std::move(pairs);
    return p;
  }

  /// Throws InputError unless pairs and unmatched sets partition both sides.
  void validate(std::size_t na, std::size_t nb) const {
    std::vector<int> seen_a(na, 0), seen_b(nb, 0);
    auto mark = [](std::vector<int> &seen, std::size_t i, const char *side) {
      if (i >= seen.size())
        throw InputError(std::string("matching references ") + side + " index " + std::to_string(i) +
                         " out of range");
      if (++seen[i] > 1) throw InputError(std::string(side) + " index " + std::to_string(i) + " used twice");
    };
    for (auto [i, j] : pairs) {
      mark(seen_a, i, "A");
      mark(seen_b, j, "B");
    }
    for (auto i : unmatched_a) mark(seen_a, i, "A");
    for (auto j : unmatched_b) mark(seen_b, j, "B");
    for (std::size_t i = 0; i < na; ++i)
      if (!seen_a[i]) throw InputError("A index " + std::to_string(i) + " neither matched nor unmatched");
    for (std::size_t j = 0; j < nb; ++j)
      if (!seen_b[j]) throw InputError("B index " + std::to_string(j) + " neither matched nor unmatched");
  }

  friend bool operator==(const PartialMatching &, const PartialMatching &) = default;
};

/// Hopcroft-Karp maximum matching on a bipartite graph with left vertices
/// 0..left-1 and right vertices 0..right-1.
class BipartiteGraph {
public:
  static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  BipartiteGraph(std::size_t left, std::size_t right) : adj_(left), right_(right) {}

  void add_edge(std::size_t u, std::size_t v) {
    if (u >= adj_.size() || v >= right_)
      throw std::out_of_range("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    adj_[u].push_back(v);
  }

  std::size_t left() const { return adj_.size(); }
  std::size_t right() const { return right_; }

  /// Runs the algorithm; returns the matching size. Neighbours are tried in
  /// insertion order, so the result is deterministic.
  std::size_t maximum_matching() {
    match_left_.assign(left(), none);
    match_right_.assign(right_, none);
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < left(); ++u)
        if (match_left_[u] == none && dfs(u)) ++size;
    }
    return size;
  }

  std::size_t mate_of_left(std::size_t u) const { return match_left_[u]; }
  std::size_t mate_of_right(std::size_t v) const { return match_right_[v]; }

private:
  static constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> queue;
    level_.assign(left(), inf);
    for (std::size_t u = 0; u < left(); ++u) {
      if (match_left_[u] == none) {
        level_[u] = 0;
        queue.push(u);
      }
    }
    bool found = false;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adj_[u]) {
        std::size_t w = match_right_[v];
        if (w == none) {
          found = true;
        } else if (level_[w] == inf) {
          level_[w] = level_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      std::size_t w = match_right_[v];
      if (w == none || (level_[w] == level_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    level_[u] = inf;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::size_t right_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> level_;
};

struct BottleneckResult {
  Extended value;
  PartialMatching witness;
};

namespace detail {

/// Perfect matching on the doubled graph at threshold t, or nothing.
///
/// Left side: A points, then a diagonal surrogate per B point. Right side:
/// B points, then a diagonal surrogate per A point.
template <class PairCost, class DiagA, class DiagB>
std::optional<PartialMatching> feasible_at(std::size_t na, std::size_t nb, const Extended &t, PairCost &&pair_cost,
                                           DiagA &&diag_a, DiagB &&diag_b) {
  BipartiteGraph g(na + nb, nb + na);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j)
      if (pair_cost(i, j) <= t) g.add_edge(i, j);
    if (diag_a(i) <= t) g.add_edge(i, nb + i);
  }
  for (std::size_t j = 0; j < nb; ++j) {
    if (diag_b(j) <= t) g.add_edge(na + j, j);
    for (std::size_t i = 0; i < na; ++i) g.add_edge(na + j, nb + i);
  }
  if (g.maximum_matching() != na + nb) return std::nullopt;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < na; ++i)
    if (g.mate_of_left(i) < nb) pairs.emplace_back(i, g.mate_of_left(i));
  return PartialMatching::from_pairs(std::move(pairs), na, nb);
}

} // namespace detail

/// Exact bottleneck distance for any pair cost and unmatched cost.
///
/// The optimum is one of the finitely many candidate costs; binary search
/// finds the smallest candidate at which the doubled graph has a perfect
/// matching.
template <class PairCost, class DiagA, class DiagB>
BottleneckResult bottleneck_search(std::size_t na, std::size_t nb, PairCost &&pair_cost, DiagA &&diag_a,
                                   DiagB &&diag_b) {
  std::vector<Extended> candidates{Extended(0)};
  for (std::size_t i = 0; i < na; ++i) {
    candidates.push_back(diag_a(i));
    for (std::size_t j = 0; j < nb; ++j) candidates.push_back(pair_cost(i, j));
  }
  for (std::size_t j = 0; j < nb; ++j) candidates.push_back(diag_b(j));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (!candidates.back().is_pos_inf()) candidates.push_back(Extended::pos_inf());

  // Feasible at +inf always; find the first feasible index.
  std::size_t lo = 0;
  std::size_t hi = candidates.size() - 1;
  auto best = detail::feasible_at(na, nb, candidates[hi], pair_cost, diag_a, diag_b);
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (auto m = detail::feasible_at(na, nb, candidates[mid], pair_cost, diag_a, diag_b)) {
      hi = mid;
      best = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  return {candidates[hi], std::move(*best)};
}

/// Bottleneck cost of a given matching.
template <class PairCost, class DiagA, class DiagB>
Extended matching_cost_with(std::size_t na, std::size_t nb, const PartialMatching &p, PairCost &&pair_cost,
                            DiagA &&diag_a, DiagB &&diag_b) {
  p.validate(na, nb);
  Extended cost(0);
  for (auto [i, j] : p.pairs) cost = std::max(cost, pair_cost(i, j));
  for (auto i : p.unmatched_a) cost = std::max(cost, diag_a(i));
  for (auto j : p.unmatched_b) cost = std::max(cost, diag_b(j));
  return cost;
}

} // namespace circpers
