// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "oracles.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace circpers;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string &title, const std::function<Outcome()> &check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception &e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.ok) ++failures;
  std::printf("%s criterion %d: %s [%s; %.2fs]\n", out.ok ? "PASS" : "FAIL", number, title.c_str(),
              out.detail.c_str(), seconds);
  std::fflush(stdout);
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome isometry() {
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.seed = 20240601;
  cfg.trials = 200;
  cfg.grid = 8;
  auto rep = verify_isometry(cfg);
  const double seconds = elapsed_since(start);
  std::ostringstream d;
  d << rep.trials.size() << " trials, max discrepancy " << format_fraction(rep.max_discrepancy) << ", "
    << rep.violations << " over 1/8, " << rep.budget_failures << " over budget";
  return {rep.violations == 0 && rep.budget_failures == 0 && seconds < 300, d.str()};
}

Outcome line_intervals() {
  const int window = 16;
  int bad = 0;
  Rational worst = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = trial_rng(2, i);
    auto I = random_window_interval(rng, window);
    auto J = random_window_interval(rng, window);
    Rational grid = line_grid_distance(I, J, window);
    Rational exact = interval_distance_line(I, J).value();
    Rational gap = abs(grid - exact);
    worst = std::max(worst, gap);
    if (gap > 1) ++bad;
  }
  return {bad == 0, "100 pairs, max gap " + format_fraction(worst) + " grid steps"};
}

Outcome bottleneck_enumeration() {
  const auto start = std::chrono::steady_clock::now();
  int bad = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = trial_rng(3, i);
    auto A = random_plane_diagram(rng, 4);
    auto B = random_plane_diagram(rng, 4);
    if (bottleneck_plane(A, B).value != oracle::plane_bottleneck(A, B)) ++bad;
    auto QA = random_quotient_diagram(rng, 4);
    auto QB = random_quotient_diagram(rng, 4);
    if (bottleneck_quotient(QA, QB).value != oracle::quotient_bottleneck(QA, QB)) ++bad;
  }
  const double seconds = elapsed_since(start);
  return {bad == 0 && seconds < 60, "500 plane and 500 quotient instances, " + std::to_string(bad) + " mismatches"};
}

Outcome quotient_closed_form() {
  int bad = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto rng = trial_rng(4, i);
    auto p = random_quotient_point(rng, 24, 3);
    auto q = random_quotient_point(rng, 24, 3);
    if (quotient_linf(p, q).value != oracle::window_quotient_linf(p, q)) ++bad;
  }
  return {bad == 0, "10000 pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome transfer() {
  int lift_bad = 0, project_bad = 0, full_classes = 0, split_classes = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = trial_rng(5, i);
    auto A = random_quotient_diagram(rng, 5);
    auto B = random_quotient_diagram(rng, 5);
    auto P = support::random_partial_matching(rng, A.size(), B.size());
    auto M = lift_matching(A, B, P);
    if (invariant_cost(M) != matching_cost_quotient(A, B, P) ||
        support::windowed_plane_cost(M, 2) != matching_cost_quotient(A, B, P))
      ++lift_bad;
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = trial_rng(6, i);
    auto A = random_quotient_diagram(rng, 5, 10);
    auto B = random_quotient_diagram(rng, 5, 10);
    auto M = support::random_invariant_matching(rng, A, B, 3);
    auto P = project_matching(M);
    for (auto c : M.matched_count_a()) (c == 3 ? full_classes : split_classes) += c > 0;
    if (!M.injective_on_window(9) || !support::projection_failures(M, P).empty() ||
        !(matching_cost_quotient(A, B, P) <= invariant_cost(M)))
      ++project_bad;
  }
  std::ostringstream d;
  d << "lift mismatches " << lift_bad << "/200, projection failures " << project_bad << "/200 (" << full_classes
    << " fully and " << split_classes << " partly matched A classes)";
  return {lift_bad == 0 && project_bad == 0, d.str()};
}

Outcome monotone_symmetric() {
  int bad = 0, tested = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = trial_rng(7, i);
    auto v = to_grid(random_grid_circle_module(rng, 8), 8);
    auto w = to_grid(random_grid_circle_module(rng, 8), 8);
    const std::int64_t top = std::max(nilpotency_length(v), nilpotency_length(w)) / 2 + 1;
    bool previous = false;
    for (std::int64_t s = 0; s <= top; ++s) {
      const bool forward = feasible_interleaving(v, w, s).has_value();
      const bool backward = feasible_interleaving(w, v, s).has_value();
      if (forward != backward || (previous && !forward)) ++bad;
      previous = forward;
      ++tested;
    }
  }
  return {bad == 0, std::to_string(tested) + " (pair, shift) cases, " + std::to_string(bad) + " violations"};
}

Outcome direct_sum_bound() {
  int bad = 0, exact_bad = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = trial_rng(8, i);
    GridModule g[4];
    for (auto &m : g) m = to_grid(random_grid_circle_module(rng, 8, 2), 8);
    auto b = max_direct_sum_bound_check(g[0], g[1], g[2], g[3]);
    if (!b.holds()) ++exact_bad;
    if (b.combined > std::max(b.first, b.second) + Rational(1, 8)) ++bad;
  }
  return {bad == 0, "50 quadruples, " + std::to_string(bad) + " beyond 1/8, " + std::to_string(exact_bad) +
                        " above the exact bound"};
}

Extended add(const Extended &a, const Extended &b) {
  if (!a.finite() || !b.finite()) return Extended::pos_inf();
  return a.value() + b.value();
}

/// Symmetry, identity and triangle violations over 100 random triples.
template <class Gen, class Dist> int metric_violations(std::uint64_t seed, Gen &&gen, Dist &&dist) {
  int bad = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = trial_rng(seed, i);
    auto x = gen(rng), y = gen(rng), z = gen(rng);
    Extended xy = dist(x, y), yz = dist(y, z), xz = dist(x, z);
    if (dist(x, x) != Extended(0) || xy != dist(y, x)) ++bad;
    if (xz > add(xy, yz)) ++bad;
  }
  return bad;
}

Outcome metric_axioms() {
  int point = metric_violations(
      9, [](Rng &rng) { return random_quotient_point(rng, 12, 2); },
      [](const QuotientPoint &p, const QuotientPoint &q) { return Extended(quotient_linf(p, q).value); });
  int plane = metric_violations(
      10, [](Rng &rng) { return random_plane_diagram(rng, 4); },
      [](const Diagram &a, const Diagram &b) { return bottleneck_plane(a, b).value; });
  int quotient = metric_violations(
      11, [](Rng &rng) { return random_quotient_diagram(rng, 4); },
      [](const QuotientDiagram &a, const QuotientDiagram &b) { return bottleneck_quotient(a, b).value; });
  std::ostringstream d;
  d << "violations: quotient_linf " << point << ", bottleneck_plane " << plane << ", bottleneck_quotient " << quotient
    << " (100 triples each)";
  return {point == 0 && plane == 0 && quotient == 0, d.str()};
}

} // namespace

int main() {
  report(1, "grid oracle matches circle interleaving distance within 1/8 (N=8, 200 pairs, < 5 min)", isometry);
  report(2, "line interval oracle within one grid step of the closed form (window 16, 100 pairs)", line_intervals);
  report(3, "bottleneck_plane and bottleneck_quotient equal exhaustive enumeration (< 1 min)", bottleneck_enumeration);
  report(4, "quotient_linf closed form equals windowed enumeration", quotient_closed_form);
  report(5, "lift cost equality and projection invariants with cost inequality", transfer);
  report(6, "feasible_interleaving is monotone in the shift and symmetric (N=8, 100 pairs)", monotone_symmetric);
  report(7, "direct-sum max bound within grid resolution (50 quadruples)", direct_sum_bound);
  report(8, "metric axioms for quotient_linf, bottleneck_plane, bottleneck_quotient", metric_axioms);
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
