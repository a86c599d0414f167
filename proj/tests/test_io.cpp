#include "circpers/circpers.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace circpers;

namespace {

Rational r(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

template <class F> std::string error_of(F &&f) {
  try {
    f();
  } catch (const InputError &e) {
    return e.what();
  }
  return "";
}

} // namespace

TEST(Rationals, ParseAndFormat) {
  EXPECT_EQ(parse_rational("0.125"), r(1, 8));
  EXPECT_EQ(parse_rational("-3/6"), r(-1, 2));
  EXPECT_EQ(parse_rational(".5"), r(1, 2));
  EXPECT_EQ(parse_rational("+7"), r(7));
  EXPECT_THROW(parse_rational("1e3"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_THROW(parse_rational(""), InputError);
  EXPECT_EQ(format_rational(r(1, 8)), "0.125");
  EXPECT_EQ(format_rational(r(-1, 20)), "-0.05");
  EXPECT_EQ(format_rational(r(1, 3)), "1/3");
  EXPECT_EQ(format_fraction(r(3, 5)), "3/5");
  EXPECT_EQ(format_fraction(r(2)), "2");
  EXPECT_TRUE(parse_extended("-inf").is_neg_inf());
  EXPECT_EQ(format_extended(Extended::pos_inf()), "inf");
}

TEST(Rationals, MixedIntegerEquality) {
  const Rational half(1, 2);
  const std::int64_t zero = 0;
  EXPECT_TRUE(Rational(0) == 0);
  EXPECT_TRUE(0 == Rational(0));
  EXPECT_TRUE(half != 0);
  EXPECT_TRUE(Rational(0) == zero);
  EXPECT_FALSE(zero == half);
  EXPECT_TRUE(Rational(3) == 3LL);
}

TEST(Rationals, FloorCeil) {
  EXPECT_EQ(floor(r(-1, 2)), -1);
  EXPECT_EQ(floor(r(3, 2)), 1);
  EXPECT_EQ(ceil(r(-1, 2)), 0);
  EXPECT_EQ(ceil(r(3, 2)), 2);
  EXPECT_EQ(floor(r(-2)), -2);
}

TEST(IntervalFile, ReadsKindsAndComments) {
  std::istringstream in("# header\n\nco 1.2 1.5\ncc 0 0   # point\n{\"kind\":\"oc\",\"lo\":\"0.25\",\"hi\":2}\n");
  auto m = read_circle_module(in, "f");
  ASSERT_EQ(m.intervals.size(), 3u);
  EXPECT_EQ(m.intervals[0].lo(), r(1, 5));
  EXPECT_EQ(m.intervals[0].lo_kind(), EndpointKind::Closed);
  EXPECT_EQ(m.intervals[0].hi_kind(), EndpointKind::Open);
  EXPECT_EQ(m.intervals[2].hi(), r(2));
}

TEST(IntervalFile, ErrorsCarryLineNumbers) {
  auto e1 = error_of([] {
    std::istringstream in("co 0 1\nxx 0 1\n");
    read_circle_module(in, "mod.txt");
  });
  EXPECT_NE(e1.find("mod.txt:2"), std::string::npos) << e1;
  auto e2 = error_of([] {
    std::istringstream in("co 0 inf\n");
    read_circle_module(in, "mod.txt");
  });
  EXPECT_NE(e2.find("mod.txt:1"), std::string::npos) << e2;
  auto e3 = error_of([] {
    std::istringstream in("cc 2 1\n");
    read_line_module(in, "line.txt");
  });
  EXPECT_NE(e3.find("line.txt:1"), std::string::npos) << e3;
}

TEST(IntervalFile, LineModulesAcceptInfinity) {
  std::istringstream in("oc -inf 3\nco 1 inf\n");
  auto m = read_line_module(in);
  ASSERT_EQ(m.intervals.size(), 2u);
  EXPECT_TRUE(m.intervals[0].lo().is_neg_inf());
  EXPECT_TRUE(m.intervals[1].hi().is_pos_inf());
}

TEST(DiagramFile, MultiplicityAndRoundTrip) {
  std::istringstream in("1 3 2\n0.5 inf\n-inf 2\n");
  auto d = read_diagram(in);
  ASSERT_EQ(d.size(), 4u);
  for (auto format : {Format::Text, Format::JsonLines}) {
    std::ostringstream out;
    write_diagram(out, d, format);
    std::istringstream back(out.str());
    auto again = read_diagram(back);
    auto a = d.points, b = again.points;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    EXPECT_EQ(a, b) << out.str();
  }
  std::ostringstream text;
  write_diagram(text, d);
  EXPECT_EQ(text.str(), "-inf 2 1\n0.5 inf 1\n1 3 2\n");
}

TEST(DiagramFile, QuotientCanonicalization) {
  std::istringstream in("1.2 1.5\n0.2 0.5\n");
  auto d = read_quotient_diagram(in);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.points[0], d.points[1]);
  std::ostringstream out;
  write_quotient_diagram(out, d);
  EXPECT_EQ(out.str(), "0.2 0.5 2\n");

  std::istringstream strict("0.2 0.5\n1.2 1.5\n");
  auto e = error_of([&] { read_quotient_diagram(strict, "q.dgm", false); });
  EXPECT_NE(e.find("q.dgm:2"), std::string::npos) << e;

  std::istringstream infinite("0 inf\n");
  EXPECT_THROW(read_quotient_diagram(infinite), InputError);
}

TEST(DiagramFile, QuotientJsonRoundTrip) {
  QuotientDiagram d{{QuotientPoint(r(1, 3), r(2)), QuotientPoint(r(1, 8), r(5, 8))}};
  std::ostringstream out;
  write_quotient_diagram(out, d, Format::JsonLines);
  std::istringstream back(out.str());
  auto again = read_quotient_diagram(back);
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again.points[1], QuotientPoint(r(1, 3), r(2)));
  EXPECT_EQ(again.points[0], QuotientPoint(r(1, 8), r(5, 8)));
}

TEST(MatchingFile, PartialMatching) {
  std::istringstream in("pair 0 1\nunmatchedA 1\n");
  auto p = read_partial_matching(in, 2, 2);
  EXPECT_EQ(p.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
  EXPECT_EQ(p.unmatched_a, (std::vector<std::size_t>{1}));
  EXPECT_EQ(p.unmatched_b, (std::vector<std::size_t>{0}));

  std::istringstream twice("pair 0 1\npair 1 1\n");
  EXPECT_THROW(read_partial_matching(twice, 2, 2), InputError);
  std::istringstream contradict("pair 0 1\nunmatchedA 0\n");
  EXPECT_THROW(read_partial_matching(contradict, 2, 2), InputError);
  std::istringstream range("pair 0 5\n");
  EXPECT_THROW(read_partial_matching(range, 2, 2), InputError);
}

TEST(MatchingFile, InvariantMatchingRoundTrip) {
  QuotientDiagram A{{QuotientPoint(0, 1), QuotientPoint(r(1, 2), 1)}};
  QuotientDiagram B{{QuotientPoint(0, 1)}};
  std::istringstream in("period 2\npair 0 0 0 0\npair 1 0 1 0\nunmatchedA 0\n");
  auto M = read_invariant_matching(in, A, B);
  EXPECT_EQ(M.period, 2);
  ASSERT_EQ(M.pairs.size(), 2u);
  std::ostringstream out;
  write_invariant_matching(out, M);
  std::istringstream back(out.str());
  auto again = read_invariant_matching(back, A, B);
  EXPECT_EQ(again.pairs, M.pairs);

  std::istringstream all("pair 0 0 1\n");
  auto full = read_invariant_matching(all, A, B);
  EXPECT_EQ(full.period, 1);
  EXPECT_EQ(full.pairs.size(), 1u);

  std::istringstream clash("period 2\npair 0 0 0\npair 1 0 0\n");
  EXPECT_THROW(read_invariant_matching(clash, A, B), InputError);
  std::istringstream late("pair 0 0 0\nperiod 2\n");
  EXPECT_THROW(read_invariant_matching(late, A, B), InputError);
}
