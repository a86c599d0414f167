// circpers: persistence diagrams, bottleneck and interleaving distances for
// modules over the real line and the circle.
//
//   circpers dgm --mode circle intervals.txt
//   circpers distance a.dgm b.dgm --metric bottleneck-q --witness
//   circpers verify-isometry --seed 7 --trials 50 --grid 8
//   circpers transfer lift --a a.dgm --b b.dgm --matching p.txt
//
// Exit codes: 0 success, 1 property violation, 2 input error.

#include "circpers/circpers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

using namespace circpers;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_input = 2;

std::ifstream open_input(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

/// Interval files start with a kind code; diagram files with a number.
bool looks_like_interval_file(const std::string &path) {
  auto in = open_input(path);
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first[0] == '{') return line.find("\"kind\"") != std::string::npos;
    return first == "oo" || first == "oc" || first == "co" || first == "cc";
  }
  return false;
}

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream *stream = &std::cout;

  explicit Output(const std::string &path) {
    if (path.empty() || path == "-") return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw InputError("cannot write '" + path + "'");
    stream = file.get();
  }
  std::ostream &operator*() { return *stream; }
};

Format parse_format(const std::string &name) { return name == "json-lines" ? Format::JsonLines : Format::Text; }

// dgm ---------------------------------------------------------------------

struct DgmOptions {
  std::string input;
  std::string mode = "circle";
  std::string output;
  std::string format = "text";
};

int run_dgm(const DgmOptions &o) {
  auto in = open_input(o.input);
  Output out(o.output);
  if (o.mode == "line")
    write_diagram(*out, diagram_of_line(read_line_module(in, o.input)), parse_format(o.format));
  else
    write_quotient_diagram(*out, diagram_of(read_circle_module(in, o.input)), parse_format(o.format));
  return exit_ok;
}

// distance ----------------------------------------------------------------

struct DistanceOptions {
  std::string a;
  std::string b;
  std::string metric = "bottleneck";
  bool witness = false;
  bool no_canonicalize = false;
  int grid = 0;
  std::uint64_t budget = default_budget;
  std::string format = "text";
};

QuotientDiagram load_quotient(const std::string &path, bool canonicalize) {
  auto in = open_input(path);
  if (looks_like_interval_file(path)) return diagram_of(read_circle_module(in, path));
  return read_quotient_diagram(in, path, canonicalize);
}

int run_distance(const DistanceOptions &o) {
  const auto format = parse_format(o.format);
  nlohmann::json record{{"metric", o.metric}};
  std::string value;
  std::optional<PartialMatching> witness;

  if (o.metric == "bottleneck") {
    auto ia = open_input(o.a);
    auto ib = open_input(o.b);
    auto r = bottleneck_plane(read_diagram(ia, o.a), read_diagram(ib, o.b));
    value = format_extended_fraction(r.value);
    witness = r.witness;
  } else if (o.metric == "bottleneck-q") {
    auto r = bottleneck_quotient(load_quotient(o.a, !o.no_canonicalize), load_quotient(o.b, !o.no_canonicalize));
    value = format_extended_fraction(r.value);
    witness = r.witness;
  } else {
    // interleave-circle: interval files give modules; the grid oracle runs
    // when --grid is set.
    const bool modules = looks_like_interval_file(o.a) && looks_like_interval_file(o.b);
    if (modules) {
      auto ia = open_input(o.a);
      auto ib = open_input(o.b);
      auto v = read_circle_module(ia, o.a);
      auto w = read_circle_module(ib, o.b);
      auto r = bottleneck_quotient(diagram_of(v), diagram_of(w));
      value = format_extended_fraction(r.value);
      witness = r.witness;
      if (o.grid > 0) {
        if (o.grid < 2) throw InputError("--grid must be at least 2");
        auto g = bruteforce_distance(to_grid(v, o.grid), to_grid(w, o.grid), o.budget);
        record["grid"] = o.grid;
        record["grid_distance"] = format_fraction(g);
      }
    } else {
      if (o.grid > 0) throw InputError("--grid needs interval files, not diagrams");
      auto r = bottleneck_quotient(load_quotient(o.a, !o.no_canonicalize), load_quotient(o.b, !o.no_canonicalize));
      value = format_extended_fraction(r.value);
      witness = r.witness;
    }
  }

  if (format == Format::JsonLines) {
    record["value"] = value;
    if (o.witness) {
      nlohmann::json pairs = nlohmann::json::array();
      for (auto [i, j] : witness->pairs) pairs.push_back({i, j});
      record["pairs"] = pairs;
      record["unmatchedA"] = witness->unmatched_a;
      record["unmatchedB"] = witness->unmatched_b;
    }
    std::cout << record.dump() << '\n';
  } else {
    std::cout << value << '\n';
    if (record.contains("grid_distance"))
      std::cout << "# grid " << o.grid << " oracle " << record["grid_distance"].get<std::string>() << '\n';
    if (o.witness) write_partial_matching(std::cout, *witness);
  }
  return exit_ok;
}

// verify-isometry -----------------------------------------------------------

std::string describe(const CircleModule &m) {
  std::string s;
  for (const auto &I : m.intervals) {
    if (!s.empty()) s += ' ';
    s += bracket_code(I.lo_kind(), I.hi_kind()) + ":" + format_rational(I.lo()) + "," + format_rational(I.hi());
  }
  return s.empty() ? "-" : s;
}

int run_verify(const RunConfig &cfg, const std::string &format_name) {
  cfg.validate();
  const auto format = parse_format(format_name);
  auto report = verify_isometry(cfg);
  for (const auto &t : report.trials) {
    auto d = t.discrepancy();
    std::string status = !d ? "budget" : (*d > report.tolerance() ? "violation" : "ok");
    if (format == Format::JsonLines) {
      nlohmann::json j{{"trial", t.index},
                       {"V", describe(t.v)},
                       {"W", describe(t.w)},
                       {"diagram_distance", format_fraction(t.diagram_distance)},
                       {"status", status}};
      if (d) {
        j["grid_distance"] = format_fraction(*t.grid_distance);
        j["discrepancy"] = format_fraction(*d);
      } else {
        j["note"] = t.note;
      }
      std::cout << j.dump() << '\n';
    } else {
      std::cout << "trial " << t.index << " diagram " << format_fraction(t.diagram_distance) << " grid "
                << (d ? format_fraction(*t.grid_distance) : std::string("-")) << " discrepancy "
                << (d ? format_fraction(*d) : std::string("-")) << ' ' << status << "  V=[" << describe(t.v)
                << "] W=[" << describe(t.w) << "]\n";
    }
  }
  if (format == Format::JsonLines) {
    std::cout << nlohmann::json{{"summary", true},
                                {"seed", cfg.seed},
                                {"trials", cfg.trials},
                                {"grid", cfg.grid},
                                {"tolerance", format_fraction(report.tolerance())},
                                {"max_discrepancy", format_fraction(report.max_discrepancy)},
                                {"violations", report.violations},
                                {"budget_failures", report.budget_failures}}
                     .dump()
              << '\n';
  } else {
    std::cout << "summary trials " << cfg.trials << " grid " << cfg.grid << " max_discrepancy "
              << format_fraction(report.max_discrepancy) << " tolerance " << format_fraction(report.tolerance())
              << " violations " << report.violations << " budget_failures " << report.budget_failures << '\n';
  }
  return report.passed() ? exit_ok : exit_violation;
}

// transfer ------------------------------------------------------------------

struct TransferOptions {
  std::string direction;
  std::string a;
  std::string b;
  std::string matching;
  std::string output;
  std::int64_t window = 3;
};

int run_transfer(const TransferOptions &o) {
  auto ia = open_input(o.a);
  auto ib = open_input(o.b);
  auto A = read_quotient_diagram(ia, o.a);
  auto B = read_quotient_diagram(ib, o.b);
  auto im = open_input(o.matching);
  Output out(o.output);
  bool ok = true;

  if (o.direction == "lift") {
    auto P = read_partial_matching(im, A.size(), B.size(), o.matching);
    auto M = lift_matching(A, B, P);
    auto quotient_cost = matching_cost_quotient(A, B, P);
    auto plane_cost = invariant_cost(M);
    ok = quotient_cost == plane_cost;
    write_invariant_matching(*out, M);
    *out << "# quotient_cost " << format_extended_fraction(quotient_cost) << '\n'
         << "# invariant_cost " << format_extended_fraction(plane_cost) << '\n'
         << "# costs_equal " << (ok ? "yes" : "NO") << '\n';
  } else {
    auto M = read_invariant_matching(im, A, B, o.matching);
    auto P = project_matching(M);
    auto plane_cost = invariant_cost(M);
    auto quotient_cost = matching_cost_quotient(A, B, P);
    auto problems = projection_violations(M, P);
    if (!M.injective_on_window(o.window))
      problems.push_back("plane matching not injective on window " + std::to_string(o.window));
    bool cost_ok = quotient_cost <= plane_cost;
    ok = cost_ok && problems.empty();
    write_partial_matching(*out, P);
    *out << "# invariant_cost " << format_extended_fraction(plane_cost) << '\n'
         << "# quotient_cost " << format_extended_fraction(quotient_cost) << '\n'
         << "# cost_not_increased " << (cost_ok ? "yes" : "NO") << '\n';
    for (const auto &p : problems) *out << "# violation " << p << '\n';
  }
  return ok ? exit_ok : exit_violation;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Persistence diagrams, bottleneck and interleaving distances on the line and the circle"};
  app.require_subcommand(1);

  DgmOptions dgm;
  auto *dgm_cmd = app.add_subcommand("dgm", "Persistence diagram of an interval list");
  dgm_cmd->add_option("input", dgm.input, "Interval list file")->required();
  dgm_cmd->add_option("--mode", dgm.mode, "line or circle")->check(CLI::IsMember({"line", "circle"}));
  dgm_cmd->add_option("-o,--output", dgm.output, "Write the diagram here instead of stdout");
  dgm_cmd->add_option("--format", dgm.format)->check(CLI::IsMember({"text", "json-lines"}));

  DistanceOptions dist;
  auto *dist_cmd = app.add_subcommand("distance", "Distance between two diagrams or modules");
  dist_cmd->add_option("a", dist.a, "First diagram (or interval list)")->required();
  dist_cmd->add_option("b", dist.b, "Second diagram (or interval list)")->required();
  dist_cmd->add_option("--metric", dist.metric)
      ->check(CLI::IsMember({"bottleneck", "bottleneck-q", "interleave-circle"}));
  dist_cmd->add_flag("--witness", dist.witness, "Print an optimal matching");
  dist_cmd->add_flag("--no-canonicalize", dist.no_canonicalize, "Reject quotient points with birth outside [0, 1)");
  dist_cmd->add_option("--grid", dist.grid, "Also run the grid oracle at this resolution (interleave-circle)");
  dist_cmd->add_option("--budget", dist.budget, "Oracle search budget (candidates)");
  dist_cmd->add_option("--format", dist.format)->check(CLI::IsMember({"text", "json-lines"}));

  RunConfig cfg;
  std::string verify_format = "text";
  auto *verify_cmd = app.add_subcommand("verify-isometry", "Compare diagram distance with the grid oracle");
  verify_cmd->add_option("--seed", cfg.seed);
  verify_cmd->add_option("--trials", cfg.trials);
  verify_cmd->add_option("--grid", cfg.grid);
  verify_cmd->add_option("--budget", cfg.budget);
  verify_cmd->add_option("--window", cfg.window);
  verify_cmd->add_option("--format", verify_format)->check(CLI::IsMember({"text", "json-lines"}));

  TransferOptions transfer;
  auto *transfer_cmd = app.add_subcommand("transfer", "Lift or project matchings between plane and quotient");
  transfer_cmd->add_option("direction", transfer.direction)->required()->check(CLI::IsMember({"lift", "project"}));
  transfer_cmd->add_option("--a", transfer.a, "Quotient diagram A")->required();
  transfer_cmd->add_option("--b", transfer.b, "Quotient diagram B")->required();
  transfer_cmd->add_option("--matching", transfer.matching, "Matching file")->required();
  transfer_cmd->add_option("-o,--output", transfer.output);
  transfer_cmd->add_option("--window", transfer.window);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (*dgm_cmd) return run_dgm(dgm);
    if (*dist_cmd) return run_distance(dist);
    if (*verify_cmd) return run_verify(cfg, verify_format);
    return run_transfer(transfer);
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const BudgetExceeded &e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  }
}
