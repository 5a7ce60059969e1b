#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kclab/rational.hpp"

namespace kclab::gf2 {

/// Vector over the two-element field.
class Vector {
 public:
  Vector() = default;
  explicit Vector(unsigned len) : len_(len), words_((len + 63) / 64, 0) {}

  unsigned len() const { return len_; }
  bool get(unsigned i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(unsigned i, bool b) {
    std::uint64_t m = std::uint64_t{1} << (i % 64);
    if (b) words_[i / 64] |= m;
    else words_[i / 64] &= ~m;
  }
  bool is_zero() const {
    for (auto w : words_) if (w) return false;
    return true;
  }
  void xor_in(const Vector& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  }
  friend bool operator==(const Vector& a, const Vector& b) {
    return a.len_ == b.len_ && a.words_ == b.words_;
  }

  /// Key with component 0 at the most significant position, so numeric order
  /// of keys equals lexicographic order of (v_0, v_1, ...). Requires len <= 64.
  std::uint64_t lex_key() const;

  std::string to_string() const;

 private:
  unsigned len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Binary matrix over the two-element field; rows are packed machine words.
/// The empty matrix (no rows or no columns) is valid and has rank 0.
class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned rows, unsigned cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), bits_(std::size_t{rows} * wpr_, 0) {}

  static Matrix identity(unsigned n);
  /// Rows given as strings of '0'/'1', e.g. {"101", "011"}.
  static Matrix from_rows(const std::vector<std::string>& rows);

  unsigned rows() const { return rows_; }
  unsigned cols() const { return cols_; }
  bool get(unsigned r, unsigned c) const {
    return (bits_[std::size_t{r} * wpr_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(unsigned r, unsigned c, bool b) {
    std::uint64_t m = std::uint64_t{1} << (c % 64);
    auto& w = bits_[std::size_t{r} * wpr_ + c / 64];
    if (b) w |= m;
    else w &= ~m;
  }

  Matrix transpose() const;
  Vector row(unsigned r) const;
  /// H * x over the two-element field.
  Vector mul(const Vector& x) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
  }

  /// Text format: first line "m n", then m lines of n characters in {0,1},
  /// newline-terminated, no other whitespace.
  std::string to_text() const;
  static Matrix parse_text(const std::string& text);

 private:
  unsigned rows_ = 0, cols_ = 0, wpr_ = 0;
  std::vector<std::uint64_t> bits_;
  friend unsigned rank(const Matrix&);
  friend unsigned rank_of_columns(const Matrix&, const std::vector<unsigned>&);
};

/// Row-space dimension, exact in-place word elimination.
unsigned rank(const Matrix& m);

/// Rank of the submatrix keeping all rows and the given columns.
unsigned rank_of_columns(const Matrix& m, const std::vector<unsigned>& cols);

/// Submatrix in the given row/column order. Indices must be in range and
/// duplicate-free; throws std::out_of_range("index out of bounds") otherwise.
Matrix submatrix(const Matrix& m, const std::vector<unsigned>& row_idx,
                 const std::vector<unsigned>& col_idx);

struct GoodnessReport {
  unsigned s_max = 0;
  std::vector<unsigned> witness_subset;  // lexicographically smallest minimizer
  unsigned subset_threshold = 0;         // number of columns per checked subset
};

inline constexpr unsigned kDefaultGoodnessCap = 18;

/// s_max = min rank over all column subsets of size exactly the threshold
/// (default ceil(n/3)); rank monotonicity under column addition makes the
/// minimal-size subsets sufficient. Throws std::invalid_argument
/// ("use monte_carlo_goodness") when n exceeds the exhaustive cap.
/// OpenMP-parallel over subsets; reduction is order-independent.
GoodnessReport goodness(const Matrix& m, unsigned cap = kDefaultGoodnessCap,
                        unsigned threshold_cols = 0);
/// Serial reference implementation, kept for testing and benchmarking.
GoodnessReport goodness_serial(const Matrix& m, unsigned cap = kDefaultGoodnessCap,
                               unsigned threshold_cols = 0);

/// True iff every column subset of the threshold size has rank >= s.
bool is_good(const Matrix& m, unsigned s, unsigned threshold_cols = 0);

/// Deterministic function of (rows, cols, seed); entries drawn row-major,
/// one generator draw per entry.
Matrix sample_matrix(unsigned rows, unsigned cols, std::uint64_t seed);

struct McGoodnessResult {
  num::Rational rate;        // good / trials, exact
  std::uint64_t good = 0;
  std::uint64_t trials = 0;
};

/// Fraction of seeded random matrices that are s-good. Trial i uses
/// derive_seed(seed, i), so the result is independent of the job count.
McGoodnessResult monte_carlo_goodness(unsigned rows, unsigned cols, unsigned s,
                                      std::uint64_t trials, std::uint64_t seed,
                                      int jobs = 0, unsigned threshold_cols = 0);
McGoodnessResult monte_carlo_goodness_serial(unsigned rows, unsigned cols, unsigned s,
                                             std::uint64_t trials, std::uint64_t seed,
                                             unsigned threshold_cols = 0);

/// Lexicographic combination enumeration helpers.
std::vector<unsigned> first_subset(unsigned k);
bool next_subset(std::vector<unsigned>& s, unsigned n);
std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace kclab::gf2
