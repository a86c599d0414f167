#pragma once

// Circle modules sampled at the N points j/N, j = 0..N-1, over GF(2).

#include "circpers/gf2.hpp"
#include "circpers/intervals.hpp"
#include "circpers/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace circpers {

/// A representation of the cyclic quiver with N nodes: a space at each node
/// and a step map from node j to node j+1 mod N.
struct GridModule {
  int n = 0;
  std::vector<int> dims;
  /// steps[j] has shape dims[(j+1) % n] x dims[j].
  std::vector<gf2::BitMatrix> steps;
  /// Source summand and translate of each basis vector, per node. Empty for
  /// modules not built from intervals.
  std::vector<std::vector<TranslateIndex>> basis;

  int node(std::int64_t j) const { return static_cast<int>(((j % n) + n) % n); }
  int dim(std::int64_t j) const { return dims[node(j)]; }

  /// Composite of `length` consecutive steps starting at node j.
  gf2::BitMatrix shift_map(std::int64_t j, std::int64_t length) const {
    auto out = gf2::BitMatrix::identity(dim(j));
    for (std::int64_t t = 0; t < length; ++t) out = steps[node(j + t)] * out;
    return out;
  }

  /// The around-the-loop map at node j.
  gf2::BitMatrix loop_map(std::int64_t j) const { return shift_map(j, n); }

  /// Throws std::invalid_argument if dims and step shapes disagree.
  void validate() const {
    if (n < 1) throw std::invalid_argument("grid module needs at least one node");
    if (static_cast<int>(dims.size()) != n || static_cast<int>(steps.size()) != n)
      throw std::invalid_argument("grid module: dims/steps size differs from N");
    for (int j = 0; j < n; ++j)
      if (steps[j].cols() != dims[j] || steps[j].rows() != dim(j + 1))
        throw std::invalid_argument("grid module: step " + std::to_string(j) + " has the wrong shape");
  }
};

inline GridModule zero_grid(int n) {
  GridModule g;
  g.n = n;
  g.dims.assign(n, 0);
  g.basis.assign(n, {});
  for (int j = 0; j < n; ++j) g.steps.emplace_back(0, 0);
  return g;
}

/// Samples m at j/N. Every endpoint must lie on the grid.
///
/// A basis vector sits at node j for each summand I and integer k with
/// j/N + k in I. Inside the fundamental domain the step keeps (I, k); the
/// wrap from node N-1 to node 0 sends (I, k) to (I, k + 1).
inline GridModule to_grid(const CircleModule &m, int n) {
  if (n < 2) throw std::invalid_argument("grid resolution must be at least 2");
  for (const auto &I : m.intervals) {
    for (const auto &e : {I.lo(), I.hi()})
      if ((e * n).denominator() != 1)
        throw InputError("endpoint " + format_rational(e) + " is not on the 1/" + std::to_string(n) + " grid");
  }
  GridModule g;
  g.n = n;
  for (int j = 0; j < n; ++j) {
    g.basis.push_back(basis_at(m, Rational(j, n)));
    g.dims.push_back(static_cast<int>(g.basis.back().size()));
  }
  for (int j = 0; j < n; ++j) {
    const auto &src = g.basis[j];
    const auto &dst = g.basis[(j + 1) % n];
    std::int64_t carry = j + 1 == n ? 1 : 0;
    gf2::BitMatrix step(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
      TranslateIndex image{src[c].interval, src[c].k + carry};
      for (std::size_t r = 0; r < dst.size(); ++r)
        if (dst[r] == image) step.set(static_cast<int>(r), static_cast<int>(c), true);
    }
    g.steps.push_back(std::move(step));
  }
  return g;
}

/// Blockwise direct sum; the first summand's basis comes first at every node.
inline GridModule direct_sum(const GridModule &x, const GridModule &y) {
  if (x.n != y.n) throw std::invalid_argument("direct_sum: grid sizes differ");
  GridModule g;
  g.n = x.n;
  for (int j = 0; j < g.n; ++j) g.dims.push_back(x.dims[j] + y.dims[j]);
  for (int j = 0; j < g.n; ++j) {
    const auto &sx = x.steps[j];
    const auto &sy = y.steps[j];
    gf2::BitMatrix step(g.dim(j + 1), g.dims[j]);
    for (int r = 0; r < sx.rows(); ++r) step.row(r) = sx.row(r);
    for (int r = 0; r < sy.rows(); ++r) step.row(sx.rows() + r) = sy.row(r) << sx.cols();
    g.steps.push_back(std::move(step));
  }
  if (x.basis.size() == static_cast<std::size_t>(g.n) && y.basis.size() == static_cast<std::size_t>(g.n)) {
    for (int j = 0; j < g.n; ++j) {
      auto b = x.basis[j];
      b.insert(b.end(), y.basis[j].begin(), y.basis[j].end());
      g.basis.push_back(std::move(b));
    }
  }
  return g;
}

/// Smallest t such that every composite of t consecutive steps vanishes.
inline std::int64_t nilpotency_length(const GridModule &g) {
  std::int64_t t = 0;
  std::vector<gf2::BitMatrix> current;
  for (int j = 0; j < g.n; ++j) current.push_back(gf2::BitMatrix::identity(g.dims[j]));
  auto all_zero = [&] {
    for (const auto &m : current)
      if (!m.is_zero()) return false;
    return true;
  };
  // current[j] is the composite of t steps ending at node j.
  const std::int64_t limit = static_cast<std::int64_t>(g.n) * (1 + [&] {
    int total = 0;
    for (int d : g.dims) total += d;
    return total;
  }());
  while (!all_zero()) {
    if (t > limit) throw std::logic_error("grid module is not nilpotent");
    std::vector<gf2::BitMatrix> next;
    for (int j = 0; j < g.n; ++j) next.push_back(g.steps[g.node(j - 1)] * current[g.node(j - 1)]);
    current = std::move(next);
    ++t;
  }
  return t;
}

} // namespace circpers
