#include "kclab/gf2.hpp"

#include <algorithm>
#include <stdexcept>

#include "kclab/parallel.hpp"
#include "kclab/rng.hpp"

namespace kclab::gf2 {

std::uint64_t Vector::lex_key() const {
  if (len_ > 64) throw std::invalid_argument("lex_key requires len <= 64");
  std::uint64_t k = 0;
  for (unsigned i = 0; i < len_; ++i) {
    if (get(i)) k |= std::uint64_t{1} << (len_ - 1 - i);
  }
  return k;
}

std::string Vector::to_string() const {
  std::string s(len_, '0');
  for (unsigned i = 0; i < len_; ++i) s[i] = get(i) ? '1' : '0';
  return s;
}

Matrix Matrix::identity(unsigned n) {
  Matrix m(n, n);
  for (unsigned i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::string>& rows) {
  unsigned r = static_cast<unsigned>(rows.size());
  unsigned c = r ? static_cast<unsigned>(rows[0].size()) : 0;
  Matrix m(r, c);
  for (unsigned i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (unsigned j = 0; j < c; ++j) {
      if (rows[i][j] != '0' && rows[i][j] != '1') throw std::invalid_argument("matrix entry not in {0,1}");
      m.set(i, j, rows[i][j] == '1');
    }
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (unsigned r = 0; r < rows_; ++r)
    for (unsigned c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

Vector Matrix::row(unsigned r) const {
  Vector v(cols_);
  for (unsigned c = 0; c < cols_; ++c) v.set(c, get(r, c));
  return v;
}

Vector Matrix::mul(const Vector& x) const {
  if (x.len() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<std::uint64_t> xw(wpr_, 0);
  for (unsigned c = 0; c < cols_; ++c)
    if (x.get(c)) xw[c / 64] |= std::uint64_t{1} << (c % 64);
  Vector out(rows_);
  for (unsigned r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (unsigned w = 0; w < wpr_; ++w) acc ^= bits_[std::size_t{r} * wpr_ + w] & xw[w];
    out.set(r, __builtin_popcountll(acc) & 1);
  }
  return out;
}

std::string Matrix::to_text() const {
  std::string s = std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
  for (unsigned r = 0; r < rows_; ++r) {
    for (unsigned c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
    s += '\n';
  }
  return s;
}

Matrix Matrix::parse_text(const std::string& text) {
  std::size_t pos = 0;
  auto next_line = [&](std::string& line) {
    if (pos >= text.size()) return false;
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) throw std::runtime_error("matrix text: missing final newline");
    line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return true;
  };
  std::string header;
  if (!next_line(header)) throw std::runtime_error("matrix text: empty input");
  auto sp = header.find(' ');
  if (sp == std::string::npos) throw std::runtime_error("matrix text: malformed header");
  unsigned r, c;
  try {
    r = static_cast<unsigned>(std::stoul(header.substr(0, sp)));
    c = static_cast<unsigned>(std::stoul(header.substr(sp + 1)));
  } catch (...) {
    throw std::runtime_error("matrix text: malformed header");
  }
  Matrix m(r, c);
  for (unsigned i = 0; i < r; ++i) {
    std::string line;
    if (!next_line(line)) throw std::runtime_error("matrix text: too few rows");
    if (line.size() != c) throw std::runtime_error("matrix text: bad row length at row " + std::to_string(i));
    for (unsigned j = 0; j < c; ++j) {
      if (line[j] != '0' && line[j] != '1')
        throw std::runtime_error("matrix text: entry not in {0,1} at row " + std::to_string(i));
      m.set(i, j, line[j] == '1');
    }
  }
  if (pos != text.size()) throw std::runtime_error("matrix text: trailing data");
  return m;
}

unsigned rank(const Matrix& m) {
  if (m.rows_ == 0 || m.cols_ == 0) return 0;
  std::vector<std::uint64_t> rows(m.bits_);
  unsigned wpr = m.wpr_;
  unsigned rk = 0;
  for (unsigned c = 0; c < m.cols_ && rk < m.rows_; ++c) {
    unsigned w = c / 64;
    std::uint64_t mask = std::uint64_t{1} << (c % 64);
    unsigned pivot = m.rows_;
    for (unsigned r = rk; r < m.rows_; ++r) {
      if (rows[std::size_t{r} * wpr + w] & mask) {
        pivot = r;
        break;
      }
    }
    if (pivot == m.rows_) continue;
    if (pivot != rk)
      for (unsigned k = 0; k < wpr; ++k)
        std::swap(rows[std::size_t{pivot} * wpr + k], rows[std::size_t{rk} * wpr + k]);
    for (unsigned r = rk + 1; r < m.rows_; ++r) {
      if (rows[std::size_t{r} * wpr + w] & mask)
        for (unsigned k = 0; k < wpr; ++k)
          rows[std::size_t{r} * wpr + k] ^= rows[std::size_t{rk} * wpr + k];
    }
    ++rk;
  }
  return rk;
}

unsigned rank_of_columns(const Matrix& m, const std::vector<unsigned>& cols) {
  // Packs the selected columns into fresh rows, then eliminates.
  unsigned nc = static_cast<unsigned>(cols.size());
  Matrix sub(m.rows(), nc);
  for (unsigned r = 0; r < m.rows(); ++r)
    for (unsigned j = 0; j < nc; ++j)
      if (m.get(r, cols[j])) sub.set(r, j, true);
  return rank(sub);
}

Matrix submatrix(const Matrix& m, const std::vector<unsigned>& row_idx,
                 const std::vector<unsigned>& col_idx) {
  auto check = [](const std::vector<unsigned>& idx, unsigned limit) {
    std::vector<bool> seen(limit, false);
    for (unsigned i : idx) {
      if (i >= limit || seen[i]) throw std::out_of_range("index out of bounds");
      seen[i] = true;
    }
  };
  check(row_idx, m.rows());
  check(col_idx, m.cols());
  Matrix out(static_cast<unsigned>(row_idx.size()), static_cast<unsigned>(col_idx.size()));
  for (unsigned r = 0; r < out.rows(); ++r)
    for (unsigned c = 0; c < out.cols(); ++c)
      if (m.get(row_idx[r], col_idx[c])) out.set(r, c, true);
  return out;
}

std::vector<unsigned> first_subset(unsigned k) {
  std::vector<unsigned> s(k);
  for (unsigned i = 0; i < k; ++i) s[i] = i;
  return s;
}

bool next_subset(std::vector<unsigned>& s, unsigned n) {
  unsigned k = static_cast<unsigned>(s.size());
  if (k == 0) return false;
  int i = static_cast<int>(k) - 1;
  while (i >= 0 && s[i] == n - k + i) --i;
  if (i < 0) return false;
  ++s[i];
  for (unsigned j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  return true;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

unsigned default_threshold(unsigned n) { return (n + 2) / 3; }  // ceil(n/3)

struct SubsetBest {
  unsigned rank;
  std::vector<unsigned> subset;
  // Total order: smaller rank wins, ties go to the lexicographically
  // smaller subset. Makes the parallel reduction schedule-independent.
  bool better_than(const SubsetBest& o) const {
    if (rank != o.rank) return rank < o.rank;
    return subset < o.subset;
  }
};

GoodnessReport report_from(const SubsetBest& best, unsigned threshold) {
  GoodnessReport rep;
  rep.s_max = best.rank;
  rep.witness_subset = best.subset;
  rep.subset_threshold = threshold;
  return rep;
}

}  // namespace

GoodnessReport goodness_serial(const Matrix& m, unsigned cap, unsigned threshold_cols) {
  if (m.cols() > cap) throw std::invalid_argument("use monte_carlo_goodness");
  unsigned t = threshold_cols ? threshold_cols : default_threshold(m.cols());
  if (t > m.cols()) throw std::invalid_argument("goodness threshold exceeds column count");
  SubsetBest best{m.rows() + 1, {}};
  std::vector<unsigned> s = first_subset(t);
  do {
    SubsetBest cand{rank_of_columns(m, s), s};
    if (cand.better_than(best)) best = cand;
  } while (next_subset(s, m.cols()));
  return report_from(best, t);
}

GoodnessReport goodness(const Matrix& m, unsigned cap, unsigned threshold_cols) {
  if (m.cols() > cap) throw std::invalid_argument("use monte_carlo_goodness");
  unsigned t = threshold_cols ? threshold_cols : default_threshold(m.cols());
  if (t > m.cols()) throw std::invalid_argument("goodness threshold exceeds column count");
  // Materialize the subset list once, then scan it in parallel.
  std::vector<std::vector<unsigned>> subsets;
  subsets.reserve(binomial(m.cols(), t));
  std::vector<unsigned> s = first_subset(t);
  do {
    subsets.push_back(s);
  } while (next_subset(s, m.cols()));

  SubsetBest best{m.rows() + 1, {}};
#ifdef _OPENMP
#pragma omp parallel
  {
    SubsetBest local{m.rows() + 1, {}};
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(subsets.size()); ++i) {
      SubsetBest cand{rank_of_columns(m, subsets[i]), subsets[i]};
      if (cand.better_than(local)) local = cand;
    }
#pragma omp critical
    {
      if (local.better_than(best)) best = local;
    }
  }
#else
  for (const auto& sub : subsets) {
    SubsetBest cand{rank_of_columns(m, sub), sub};
    if (cand.better_than(best)) best = cand;
  }
#endif
  return report_from(best, t);
}

bool is_good(const Matrix& m, unsigned s, unsigned threshold_cols) {
  if (s == 0) return true;
  unsigned t = threshold_cols ? threshold_cols : default_threshold(m.cols());
  if (t > m.cols()) return false;
  std::vector<unsigned> sub = first_subset(t);
  do {
    if (rank_of_columns(m, sub) < s) return false;
  } while (next_subset(sub, m.cols()));
  return true;
}

Matrix sample_matrix(unsigned rows, unsigned cols, std::uint64_t seed) {
  Rng g(seed);
  Matrix m(rows, cols);
  for (unsigned r = 0; r < rows; ++r)
    for (unsigned c = 0; c < cols; ++c) m.set(r, c, g.next_bit());
  return m;
}

McGoodnessResult monte_carlo_goodness_serial(unsigned rows, unsigned cols, unsigned s,
                                             std::uint64_t trials, std::uint64_t seed,
                                             unsigned threshold_cols) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_goodness requires trials > 0");
  std::uint64_t good = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Matrix h = sample_matrix(rows, cols, derive_seed(seed, i));
    if (is_good(h, s, threshold_cols)) ++good;
  }
  return {num::Rational(num::BigInt::from_uint64(good), num::BigInt::from_uint64(trials)),
          good, trials};
}

McGoodnessResult monte_carlo_goodness(unsigned rows, unsigned cols, unsigned s,
                                      std::uint64_t trials, std::uint64_t seed, int jobs,
                                      unsigned threshold_cols) {
  if (trials == 0) throw std::invalid_argument("monte_carlo_goodness requires trials > 0");
  std::uint64_t good = 0;
  int nthreads = effective_jobs(jobs);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nthreads) reduction(+ : good)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i) {
    Matrix h = sample_matrix(rows, cols, derive_seed(seed, static_cast<std::uint64_t>(i)));
    if (is_good(h, s, threshold_cols)) ++good;
  }
#else
  (void)nthreads;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Matrix h = sample_matrix(rows, cols, derive_seed(seed, i));
    if (is_good(h, s, threshold_cols)) ++good;
  }
#endif
  return {num::Rational(num::BigInt::from_uint64(good), num::BigInt::from_uint64(trials)),
          good, trials};
}

}  // namespace kclab::gf2
