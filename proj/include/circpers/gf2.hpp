#pragma once

// Linear algebra over the two-element field.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace circpers::gf2 {

/// Dense 0/1 matrix with at most 64 columns; each row is one machine word.
class BitMatrix {
public:
  static constexpr int max_cols = 64;

  BitMatrix() = default;
  BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows, 0) {
    if (rows < 0 || cols < 0 || cols > max_cols)
      throw std::length_error("BitMatrix: " + std::to_string(cols) + " columns exceeds " +
                              std::to_string(max_cols));
  }

  static BitMatrix identity(int n) {
    BitMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const { return (data_[r] >> c) & 1u; }
  void set(int r, int c, bool v) {
    if (v)
      data_[r] |= std::uint64_t{1} << c;
    else
      data_[r] &= ~(std::uint64_t{1} << c);
  }
  void flip(int r, int c) { data_[r] ^= std::uint64_t{1} << c; }

  std::uint64_t row(int r) const { return data_[r]; }
  std::uint64_t &row(int r) { return data_[r]; }

  bool is_zero() const {
    for (auto w : data_)
      if (w) return false;
    return true;
  }

  friend bool operator==(const BitMatrix &, const BitMatrix &) = default;

  BitMatrix &operator^=(const BitMatrix &o) {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("BitMatrix: shape mismatch in sum");
    for (int r = 0; r < rows_; ++r) data_[r] ^= o.data_[r];
    return *this;
  }

  /// this * rhs
  BitMatrix operator*(const BitMatrix &rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("BitMatrix: shape mismatch in product");
    BitMatrix out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r) {
      std::uint64_t acc = 0;
      for (std::uint64_t bits = data_[r]; bits; bits &= bits - 1) acc ^= rhs.data_[std::countr_zero(bits)];
      out.data_[r] = acc;
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Variable-length bit vector used for equations with many unknowns.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v) {
    auto mask = std::uint64_t{1} << (i % 64);
    if (v)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  BitVector &operator^=(const BitVector &o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
  }

  /// Index of the lowest set bit, or size() when zero.
  std::size_t first_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
    return size_;
  }

  friend bool operator==(const BitVector &, const BitVector &) = default;

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Incrementally reduced system A x = b over GF(2).
///
/// Equations are kept in echelon form keyed by their pivot column; an
/// inconsistent equation (0 = 1) marks the system unsolvable.
class LinearSystem {
public:
  explicit LinearSystem(std::size_t unknowns) : n_(unknowns), pivot_row_(unknowns, -1) {}

  std::size_t unknowns() const { return n_; }
  bool consistent() const { return consistent_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds sum_i coeffs[i] x_i = rhs. Returns false once the system is inconsistent.
  bool add(BitVector coeffs, bool rhs) {
    if (!consistent_) return false;
    for (;;) {
      std::size_t p = coeffs.first_set();
      if (p == n_) {
        if (rhs) consistent_ = false;
        return consistent_;
      }
      if (pivot_row_[p] < 0) {
        pivot_row_[p] = static_cast<int>(rows_.size());
        rows_.push_back({std::move(coeffs), rhs});
        return true;
      }
      const auto &row = rows_[pivot_row_[p]];
      coeffs ^= row.coeffs;
      rhs ^= row.rhs;
    }
  }

  /// Solution with every free variable set to zero.
  std::optional<BitVector> particular_solution() const {
    if (!consistent_) return std::nullopt;
    BitVector x(n_);
    // Rows were reduced only against earlier pivots; back-substitute by
    // descending pivot column.
    for (std::size_t p = n_; p-- > 0;) {
      if (pivot_row_[p] < 0) continue;
      const auto &row = rows_[pivot_row_[p]];
      bool v = row.rhs;
      for (std::size_t c = p + 1; c < n_; ++c)
        if (row.coeffs.get(c) && x.get(c)) v = !v;
      x.set(p, v);
    }
    return x;
  }

  /// Basis of the solution space of the homogeneous system A x = 0.
  std::vector<BitVector> nullspace() const {
    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < n_; ++f) {
      if (pivot_row_[f] >= 0) continue;
      BitVector x(n_);
      x.set(f, true);
      for (std::size_t p = n_; p-- > 0;) {
        if (pivot_row_[p] < 0) continue;
        const auto &row = rows_[pivot_row_[p]];
        bool v = false;
        for (std::size_t c = p + 1; c < n_; ++c)
          if (row.coeffs.get(c) && x.get(c)) v = !v;
        x.set(p, v);
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

private:
  struct Row {
    BitVector coeffs;
    bool rhs;
  };

  std::size_t n_;
  std::vector<int> pivot_row_;
  std::vector<Row> rows_;
  bool consistent_ = true;
};

/// Small system with at most 64 unknowns, one word per equation.
class SmallSystem {
public:
  explicit SmallSystem(int unknowns) : n_(unknowns) {
    if (unknowns > 64) throw std::length_error("SmallSystem: more than 64 unknowns");
    pivots_.fill(0);
  }

  bool consistent() const { return consistent_; }

  bool add(std::uint64_t coeffs, bool rhs) {
    if (!consistent_) return false;
    while (coeffs) {
      int p = std::countr_zero(coeffs);
      if (!(used_ >> p & 1u)) {
        used_ |= std::uint64_t{1} << p;
        pivots_[p] = coeffs;
        rhs_ = rhs ? (rhs_ | std::uint64_t{1} << p) : (rhs_ & ~(std::uint64_t{1} << p));
        return true;
      }
      coeffs ^= pivots_[p];
      rhs ^= (rhs_ >> p) & 1u;
    }
    if (rhs) consistent_ = false;
    return consistent_;
  }

  /// Solution with free variables zero; requires consistent().
  std::uint64_t particular_solution() const {
    std::uint64_t x = 0;
    for (int p = n_ - 1; p >= 0; --p) {
      if (!(used_ >> p & 1u)) continue;
      std::uint64_t higher = p == 63 ? 0 : pivots_[p] & (~std::uint64_t{0} << (p + 1));
      bool v = ((rhs_ >> p) & 1u) ^ (std::popcount(higher & x) & 1);
      if (v) x |= std::uint64_t{1} << p;
    }
    return x;
  }

private:
  int n_;
  std::uint64_t used_ = 0;
  std::uint64_t rhs_ = 0;
  std::array<std::uint64_t, 64> pivots_;
  bool consistent_ = true;
};

} // namespace circpers::gf2
