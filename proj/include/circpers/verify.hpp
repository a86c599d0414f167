#pragma once

// Randomised comparison of the diagram-based circle interleaving distance
// with the brute-force grid oracle.

#include "circpers/grid.hpp"
#include "circpers/interleaving.hpp"
#include "circpers/intervals.hpp"
#include "circpers/random.hpp"
#include "circpers/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace circpers {

struct RunConfig {
  std::uint64_t seed = 1;
  std::int64_t trials = 50;
  int grid = 8;
  std::uint64_t budget = default_budget;
  std::int64_t window = 3;

  void validate() const {
    if (grid < 2) throw InputError("--grid must be at least 2");
    if (trials < 1) throw InputError("--trials must be at least 1");
    if (budget < 1) throw InputError("--budget must be positive");
    if (window < 1) throw InputError("--window must be at least 1");
  }
};

struct TrialResult {
  std::int64_t index = 0;
  CircleModule v;
  CircleModule w;
  Rational diagram_distance;
  std::optional<Rational> grid_distance; // empty when the search budget ran out
  std::string note;

  std::optional<Rational> discrepancy() const {
    if (!grid_distance) return std::nullopt;
    return abs(*grid_distance - diagram_distance);
  }
};

/// Compares both distances for one pair of on-grid circle modules.
inline TrialResult compare_distances(const CircleModule &v, const CircleModule &w, int grid,
                                     std::uint64_t budget = default_budget) {
  TrialResult t;
  t.v = v;
  t.w = w;
  t.diagram_distance = interleaving_distance_circle(v, w);
  try {
    t.grid_distance = bruteforce_distance(to_grid(v, grid), to_grid(w, grid), budget);
  } catch (const BudgetExceeded &e) {
    t.note = e.what();
  }
  return t;
}

struct VerifyReport {
  RunConfig config;
  std::vector<TrialResult> trials;
  Rational max_discrepancy{0};
  std::int64_t violations = 0;
  std::int64_t budget_failures = 0;

  Rational tolerance() const { return Rational(1, config.grid); }
  bool passed() const { return violations == 0; }
};

/// Runs cfg.trials random trials; trial i draws both modules from
/// trial_rng(cfg.seed, i), V first.
inline VerifyReport verify_isometry(const RunConfig &cfg) {
  cfg.validate();
  VerifyReport report;
  report.config = cfg;
  for (std::int64_t i = 0; i < cfg.trials; ++i) {
    auto rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(i));
    auto v = random_grid_circle_module(rng, cfg.grid);
    auto w = random_grid_circle_module(rng, cfg.grid);
    auto t = compare_distances(v, w, cfg.grid, cfg.budget);
    t.index = i;
    if (auto d = t.discrepancy()) {
      report.max_discrepancy = std::max(report.max_discrepancy, *d);
      if (*d > report.tolerance()) ++report.violations;
    } else {
      ++report.budget_failures;
    }
    report.trials.push_back(std::move(t));
  }
  return report;
}

} // namespace circpers
