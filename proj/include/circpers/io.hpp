#pragma once

// Text formats.
//
//   interval list   KIND lo hi           KIND in {oo, oc, co, cc}
//   diagram         a b [multiplicity]
//   matching        pair i j [k [r]] | unmatchedA i | unmatchedB j | period K
//
// `#` starts a comment, blank lines are ignored, numbers are exact decimals
// or p/q, and `-inf` / `inf` spell infinite coordinates. Diagram and interval
// readers also accept the json-lines records the writers emit with
// Format::JsonLines.

#include "circpers/intervals.hpp"
#include "circpers/matching.hpp"
#include "circpers/matching_transfer.hpp"
#include "circpers/metric_plane.hpp"
#include "circpers/metric_quotient.hpp"
#include "circpers/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace circpers {

enum class Format { Text, JsonLines };

namespace io {

struct Line {
  int number;
  std::vector<std::string> fields;
  bool json = false;
  nlohmann::json record;
};

inline std::vector<Line> tokenize(std::istream &in, const std::string &source) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto first = raw.find_first_not_of(" \t\r");
    if (first != std::string::npos && raw[first] == '{') {
      Line line{number, {}, true, {}};
      try {
        line.record = nlohmann::json::parse(raw);
      } catch (const nlohmann::json::exception &e) {
        throw InputError(source + ":" + std::to_string(number) + ": bad json record: " + e.what());
      }
      out.push_back(std::move(line));
      continue;
    }
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    Line line{number, {}, false, {}};
    for (std::string w; words >> w;) line.fields.push_back(w);
    if (!line.fields.empty()) out.push_back(std::move(line));
  }
  return out;
}

[[noreturn]] inline void fail(const std::string &source, int line, const std::string &message) {
  throw InputError(source + ":" + std::to_string(line) + ": " + message);
}

/// Runs fn, re-throwing InputError with the source location prepended.
template <class Fn> auto at(const std::string &source, int line, Fn &&fn) {
  try {
    return fn();
  } catch (const InputError &e) {
    fail(source, line, e.what());
  } catch (const nlohmann::json::exception &e) {
    fail(source, line, e.what());
  }
}

inline std::string json_number(const nlohmann::json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw InputError("expected an integer or a string holding an exact number");
}

inline std::size_t parse_index(const std::string &text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("not an index: '" + text + "'");
  return std::stoull(text);
}

inline std::int64_t parse_integer(const std::string &text) {
  Rational r = parse_rational(text);
  if (r.denominator() != 1) throw InputError("not an integer: '" + text + "'");
  return r.numerator();
}

inline std::pair<EndpointKind, EndpointKind> parse_kind(const std::string &code) {
  if (code.size() != 2 || (code[0] != 'o' && code[0] != 'c') || (code[1] != 'o' && code[1] != 'c'))
    throw InputError("interval kind must be one of oo, oc, co, cc; got '" + code + "'");
  auto kind = [](char c) { return c == 'o' ? EndpointKind::Open : EndpointKind::Closed; };
  return {kind(code[0]), kind(code[1])};
}

} // namespace io

namespace io {

/// Intervals of an interval file with the line each came from.
inline std::vector<std::pair<LineInterval, int>> read_intervals(std::istream &in, const std::string &source) {
  std::vector<std::pair<LineInterval, int>> out;
  for (const auto &line : io::tokenize(in, source)) {
    io::at(source, line.number, [&] {
      std::string kind, lo, hi;
      if (line.json) {
        kind = line.record.at("kind").get<std::string>();
        lo = io::json_number(line.record.at("lo"));
        hi = io::json_number(line.record.at("hi"));
      } else {
        if (line.fields.size() != 3) throw InputError("expected `KIND lo hi`");
        kind = line.fields[0], lo = line.fields[1], hi = line.fields[2];
      }
      auto [lk, hk] = io::parse_kind(kind);
      out.emplace_back(LineInterval(parse_extended(lo), parse_extended(hi), lk, hk), line.number);
      return 0;
    });
  }
  return out;
}

} // namespace io

inline LineModule read_line_module(std::istream &in, const std::string &source = "<input>") {
  LineModule m;
  for (const auto &entry : io::read_intervals(in, source)) m.intervals.push_back(entry.first);
  return m;
}

inline CircleModule read_circle_module(std::istream &in, const std::string &source = "<input>") {
  CircleModule m;
  for (const auto &[I, line] : io::read_intervals(in, source)) {
    if (!I.lo().finite() || !I.hi().finite()) io::fail(source, line, "circle modules need finite endpoints");
    m.intervals.emplace_back(I.lo().value(), I.hi().value(), I.lo_kind(), I.hi_kind());
  }
  return m;
}

struct DiagramEntry {
  Extended a;
  Extended b;
  std::int64_t multiplicity;
  int line;
};

inline std::vector<DiagramEntry> read_diagram_entries(std::istream &in, const std::string &source) {
  std::vector<DiagramEntry> entries;
  for (const auto &line : io::tokenize(in, source)) {
    io::at(source, line.number, [&] {
      std::string a, b, mult = "1";
      if (line.json) {
        a = io::json_number(line.record.at("a"));
        b = io::json_number(line.record.at("b"));
        if (line.record.contains("multiplicity")) mult = io::json_number(line.record.at("multiplicity"));
      } else {
        if (line.fields.size() != 2 && line.fields.size() != 3) throw InputError("expected `a b [multiplicity]`");
        a = line.fields[0], b = line.fields[1];
        if (line.fields.size() == 3) mult = line.fields[2];
      }
      auto m = io::parse_integer(mult);
      if (m < 1) throw InputError("multiplicity must be positive");
      PlanePoint p(parse_extended(a), parse_extended(b)); // validates
      entries.push_back({p.a(), p.b(), m, line.number});
      return 0;
    });
  }
  return entries;
}

inline Diagram read_diagram(std::istream &in, const std::string &source = "<input>") {
  Diagram d;
  for (const auto &e : read_diagram_entries(in, source))
    for (std::int64_t k = 0; k < e.multiplicity; ++k) d.points.emplace_back(e.a, e.b);
  return d;
}

/// Reads a quotient diagram. Points are moved to their canonical
/// representative unless `canonicalize` is false, in which case a
/// non-canonical point is an error.
inline QuotientDiagram read_quotient_diagram(std::istream &in, const std::string &source = "<input>",
                                             bool canonicalize = true) {
  QuotientDiagram d;
  for (const auto &e : read_diagram_entries(in, source)) {
    if (!e.a.finite() || !e.b.finite()) io::fail(source, e.line, "quotient diagrams need finite coordinates");
    if (!canonicalize && !QuotientPoint::is_canonical(e.a.value()))
      io::fail(source, e.line, "point is not canonical (birth must lie in [0, 1))");
    for (std::int64_t k = 0; k < e.multiplicity; ++k) d.points.emplace_back(e.a.value(), e.b.value());
  }
  return d;
}

namespace io {

template <class Point> std::vector<std::pair<Point, std::int64_t>> aggregate(std::vector<Point> points) {
  std::sort(points.begin(), points.end(), [](const Point &p, const Point &q) { return p < q; });
  std::vector<std::pair<Point, std::int64_t>> out;
  for (const auto &p : points) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

inline void write_point(std::ostream &out, const std::string &a, const std::string &b, std::int64_t mult,
                        Format format) {
  if (format == Format::JsonLines)
    out << nlohmann::json{{"a", a}, {"b", b}, {"multiplicity", mult}}.dump() << '\n';
  else
    out << a << ' ' << b << ' ' << mult << '\n';
}

} // namespace io

/// Writes points sorted, with equal points merged into one line.
inline void write_diagram(std::ostream &out, const Diagram &d, Format format = Format::Text) {
  for (const auto &[p, m] : io::aggregate(d.points))
    io::write_point(out, format_extended(p.a()), format_extended(p.b()), m, format);
}

inline void write_quotient_diagram(std::ostream &out, const QuotientDiagram &d, Format format = Format::Text) {
  for (const auto &[p, m] : io::aggregate(d.points))
    io::write_point(out, format_rational(p.a()), format_rational(p.b()), m, format);
}

/// Reads `pair i j` / `unmatchedA i` / `unmatchedB j` lines. Indices not
/// mentioned are unmatched.
inline PartialMatching read_partial_matching(std::istream &in, std::size_t na, std::size_t nb,
                                             const std::string &source = "<input>") {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> listed_a, listed_b;
  for (const auto &line : io::tokenize(in, source)) {
    io::at(source, line.number, [&] {
      if (line.json) throw InputError("matching files are plain text");
      const auto &f = line.fields;
      if (f[0] == "pair" && f.size() == 3)
        pairs.emplace_back(io::parse_index(f[1]), io::parse_index(f[2]));
      else if (f[0] == "unmatchedA" && f.size() == 2)
        listed_a.push_back(io::parse_index(f[1]));
      else if (f[0] == "unmatchedB" && f.size() == 2)
        listed_b.push_back(io::parse_index(f[1]));
      else
        throw InputError("expected `pair i j`, `unmatchedA i` or `unmatchedB j`");
      return 0;
    });
  }
  for (auto [i, j] : pairs)
    if (i >= na || j >= nb)
      throw InputError(source + ": pair (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
  auto p = PartialMatching::from_pairs(std::move(pairs), na, nb);
  try {
    p.validate(na, nb);
  } catch (const InputError &e) {
    throw InputError(source + ": " + e.what());
  }
  auto listed_ok = [](const std::vector<std::size_t> &listed, const std::vector<std::size_t> &unmatched) {
    return std::all_of(listed.begin(), listed.end(), [&](std::size_t i) {
      return std::find(unmatched.begin(), unmatched.end(), i) != unmatched.end();
    });
  };
  if (!listed_ok(listed_a, p.unmatched_a) || !listed_ok(listed_b, p.unmatched_b))
    throw InputError(source + ": an index listed as unmatched is paired or out of range");
  return p;
}

/// Reads an invariant matching over the given classes: `period K` (default
/// 1), then `pair i j k [r]` orbit lines. Without r the pair applies to every
/// residue with the same shift. `unmatchedA` / `unmatchedB` lines are
/// accepted and must agree with the pairs.
inline InvariantMatching read_invariant_matching(std::istream &in, const QuotientDiagram &A, const QuotientDiagram &B,
                                                 const std::string &source = "<input>") {
  InvariantMatching M{A.points, B.points, 1, {}};
  struct Pending {
    std::size_t a, b;
    std::int64_t shift;
    std::optional<std::int64_t> residue;
    int line;
  };
  std::vector<Pending> pending;
  std::vector<std::size_t> listed_a, listed_b;
  bool period_seen = false;
  for (const auto &line : io::tokenize(in, source)) {
    io::at(source, line.number, [&] {
      if (line.json) throw InputError("matching files are plain text");
      const auto &f = line.fields;
      if (f[0] == "period" && f.size() == 2) {
        if (period_seen || !pending.empty()) throw InputError("`period` must come first and only once");
        period_seen = true;
        M.period = io::parse_integer(f[1]);
        if (M.period < 1) throw InputError("period must be >= 1");
      } else if (f[0] == "pair" && (f.size() == 4 || f.size() == 5)) {
        Pending p{io::parse_index(f[1]), io::parse_index(f[2]), io::parse_integer(f[3]), std::nullopt, line.number};
        if (f.size() == 5) p.residue = io::parse_integer(f[4]);
        pending.push_back(p);
      } else if (f[0] == "unmatchedA" && f.size() == 2) {
        listed_a.push_back(io::parse_index(f[1]));
      } else if (f[0] == "unmatchedB" && f.size() == 2) {
        listed_b.push_back(io::parse_index(f[1]));
      } else {
        throw InputError("expected `period K`, `pair i j k [r]`, `unmatchedA i` or `unmatchedB j`");
      }
      return 0;
    });
  }
  for (const auto &p : pending) {
    if (p.residue) {
      M.pairs.push_back({p.a, *p.residue, p.b, p.shift});
    } else {
      for (std::int64_t r = 0; r < M.period; ++r) M.pairs.push_back({p.a, r, p.b, p.shift});
    }
  }
  try {
    M.validate();
  } catch (const InputError &e) {
    throw InputError(source + ": " + e.what());
  }
  auto ca = M.matched_count_a();
  for (auto i : listed_a)
    if (i >= ca.size() || ca[i] == M.period)
      throw InputError(source + ": unmatchedA " + std::to_string(i) + " has no unmatched representative or is out of range");
  auto cb = M.matched_count_b();
  for (auto j : listed_b)
    if (j >= cb.size() || cb[j] == M.period)
      throw InputError(source + ": unmatchedB " + std::to_string(j) + " has no unmatched representative or is out of range");
  return M;
}

inline void write_partial_matching(std::ostream &out, const PartialMatching &p) {
  for (auto [i, j] : p.pairs) out << "pair " << i << ' ' << j << '\n';
  for (auto i : p.unmatched_a) out << "unmatchedA " << i << '\n';
  for (auto j : p.unmatched_b) out << "unmatchedB " << j << '\n';
}

inline void write_invariant_matching(std::ostream &out, const InvariantMatching &M) {
  out << "period " << M.period << '\n';
  for (const auto &p : M.pairs) out << "pair " << p.a << ' ' << p.b << ' ' << p.shift << ' ' << p.residue << '\n';
  auto ca = M.matched_count_a();
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i] < M.period) out << "unmatchedA " << i << '\n';
  auto cb = M.matched_count_b();
  for (std::size_t j = 0; j < cb.size(); ++j)
    if (cb[j] < M.period) out << "unmatchedB " << j << '\n';
}

} // namespace circpers
