#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

// Under C++20 rewritten comparisons, boost's mixed rational/integer equality
// templates resolve to one another and recurse forever. Non-template
// overloads win overload resolution and compare as rationals instead.
namespace boost {
#define CIRCPERS_RATIONAL_EQ(T)                                                                                  \
  inline bool operator==(const rational<std::int64_t> &a, T b) { return a == rational<std::int64_t>(b); }     \
  inline bool operator==(T a, const rational<std::int64_t> &b) { return rational<std::int64_t>(a) == b; }     \
  inline bool operator!=(const rational<std::int64_t> &a, T b) { return !(a == rational<std::int64_t>(b)); }  \
  inline bool operator!=(T a, const rational<std::int64_t> &b) { return !(rational<std::int64_t>(a) == b); }
CIRCPERS_RATIONAL_EQ(int)
CIRCPERS_RATIONAL_EQ(long)
CIRCPERS_RATIONAL_EQ(long long)
#undef CIRCPERS_RATIONAL_EQ
} // namespace boost

namespace circpers {

using Rational = boost::rational<std::int64_t>;

/// Thrown for malformed user input (files, command-line values).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline Rational abs(const Rational &r) { return r < 0 ? -r : r; }

inline std::int64_t floor(const Rational &r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

inline std::int64_t ceil(const Rational &r) { return -floor(-r); }

/// Parses `-12`, `0.125`, `+3.`, `.5` or `3/5` exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw InputError("not a rational number: '" + std::string(text) + "'"); };
  if (text.empty()) fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (num.denominator() != 1 || den.denominator() != 1 || den == 0) fail();
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++pos;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c == '.') {
      if (seen_point) fail();
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') fail();
    seen_digit = true;
    if (num > (INT64_MAX - 9) / 10 || (seen_point && den > INT64_MAX / 10))
      throw InputError("number has too many digits: '" + std::string(text) + "'");
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
  }
  if (!seen_digit) fail();
  Rational r(num, den);
  return negative ? -r : r;
}

/// Exact text form: a terminating decimal when one exists, otherwise `p/q`.
inline std::string format_rational(const Rational &r) {
  std::int64_t den = r.denominator();
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) den /= 2, ++twos;
  while (den % 5 == 0) den /= 5, ++fives;
  if (den != 1 || std::max(twos, fives) > 18) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
  }
  int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::int64_t scaled = r.numerator() * (scale / r.denominator());
  std::string sign = scaled < 0 ? "-" : "";
  std::uint64_t mag = scaled < 0 ? -static_cast<std::uint64_t>(scaled) : scaled;
  std::string whole = std::to_string(mag / scale);
  if (digits == 0) return sign + whole;
  std::string frac = std::to_string(mag % scale);
  frac.insert(0, digits - frac.size(), '0');
  return sign + whole + "." + frac;
}

/// `p/q` in lowest terms, or `p` for integers.
inline std::string format_fraction(const Rational &r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// A real number extended by -inf and +inf.
class Extended {
public:
  enum class Kind { NegInf, Finite, PosInf };

  Extended() = default;
  Extended(Rational r) : value_(r) {}
  Extended(std::int64_t n) : value_(n) {}

  static Extended pos_inf() { return Extended(Kind::PosInf); }
  static Extended neg_inf() { return Extended(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  const Rational &value() const {
    if (!finite()) throw std::logic_error("value() of an infinite extended real");
    return value_;
  }

  friend bool operator==(const Extended &a, const Extended &b) {
    return a.kind_ == b.kind_ && (!a.finite() || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Extended &a, const Extended &b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (!a.finite()) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Extended operator-() const {
    switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    default: return Extended(-value_);
    }
  }

private:
  explicit Extended(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  Rational value_{0};
};

/// |x - y| with the convention that equal infinities are at distance 0.
inline Extended abs_diff(const Extended &x, const Extended &y) {
  if (x.finite() && y.finite()) return abs(x.value() - y.value());
  if (x.kind() == y.kind()) return Rational(0);
  return Extended::pos_inf();
}

/// (hi - lo) / 2, infinite when either end is infinite.
inline Extended half_length(const Extended &lo, const Extended &hi) {
  if (lo.finite() && hi.finite()) return (hi.value() - lo.value()) / 2;
  return Extended::pos_inf();
}

inline Extended parse_extended(std::string_view text) {
  if (text == "inf" || text == "+inf") return Extended::pos_inf();
  if (text == "-inf") return Extended::neg_inf();
  return parse_rational(text);
}

inline std::string format_extended(const Extended &x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return format_rational(x.value());
}

inline std::string format_extended_fraction(const Extended &x) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return format_fraction(x.value());
}

inline double to_double(const Rational &r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

} // namespace circpers
