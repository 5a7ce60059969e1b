#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kclab/rational.hpp"

namespace kclab::boolfun {

/// Process-wide variable cap for explicit truth tables (default 24, i.e.
/// 16 Mibit tables). The CLI maps the KCLAB_CAP environment variable here.
unsigned truth_table_cap();
void set_truth_table_cap(unsigned n);

/// Explicit Boolean function on n variables. An assignment is encoded as an
/// unsigned integer with variable x1 at the least significant bit; table bit
/// a holds f(a).
class TruthTable {
 public:
  TruthTable() : TruthTable(0) {}
  explicit TruthTable(unsigned n);

  static TruthTable from_models(unsigned n, const std::vector<std::uint64_t>& models);
  static TruthTable from_predicate(unsigned n, const std::function<bool(std::uint64_t)>& pred);
  static TruthTable constant(unsigned n, bool value);

  unsigned vars() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }
  bool get(std::uint64_t a) const { return (words_[a >> 6] >> (a & 63)) & 1u; }
  void set(std::uint64_t a, bool b) {
    std::uint64_t m = std::uint64_t{1} << (a & 63);
    if (b) words_[a >> 6] |= m;
    else words_[a >> 6] &= ~m;
  }

  std::uint64_t count_models() const;
  std::vector<std::uint64_t> models() const;
  bool is_constant_false() const { return count_models() == 0; }

  friend bool operator==(const TruthTable& a, const TruthTable& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const TruthTable& a, const TruthTable& b) { return !(a == b); }

  /// Text format: line 1 "n", line 2 hex string of the 2^n table bits with
  /// the lowest-index assignments in the least significant nibble.
  std::string to_text() const;
  static TruthTable parse_text(const std::string& text);

 private:
  unsigned n_;
  std::vector<std::uint64_t> words_;
  void mask_tail();
  friend TruthTable combine_and(const TruthTable&, const TruthTable&);
  friend TruthTable combine_or(const TruthTable&, const TruthTable&);
  friend TruthTable combine_xor(const TruthTable&, const TruthTable&);
  friend TruthTable combine_not(const TruthTable&);
};

bool eval(const TruthTable& f, std::uint64_t assignment);
TruthTable combine_and(const TruthTable& f, const TruthTable& g);
TruthTable combine_or(const TruthTable& f, const TruthTable& g);
TruthTable combine_xor(const TruthTable& f, const TruthTable& g);
TruthTable combine_not(const TruthTable& f);

/// Fixes the given variables; the result is a function on the remaining
/// variables in their original relative order.
TruthTable condition(const TruthTable& f,
                     const std::vector<std::pair<unsigned, bool>>& assignment);

/// Distribution over assignments. Weights are exact rationals and must sum
/// to one for the explicit variant.
class Distribution {
 public:
  enum class Kind { Uniform, Product, Explicit };

  static Distribution uniform();
  /// probs[i] = Pr[x_{i+1} = 1], each in [0, 1].
  static Distribution product(std::vector<num::Rational> probs);
  /// One weight per assignment, nonnegative, summing to exactly 1.
  static Distribution explicit_weights(std::vector<num::Rational> weights);

  Kind kind() const { return kind_; }
  const std::vector<num::Rational>& params() const { return params_; }

  /// Probability of a single assignment on n variables.
  num::Rational weight(unsigned n, std::uint64_t assignment) const;

 private:
  Kind kind_ = Kind::Uniform;
  std::vector<num::Rational> params_;
};

/// Exact Pr_D[f = 1].
num::Rational prob(const TruthTable& f, const Distribution& d);

/// Exact Pr_D[f != g].
num::Rational weak_eps(const TruthTable& f, const TruthTable& g, const Distribution& d);

/// Pr_D[f != g] / Pr_D[f = 1]; throws std::domain_error
/// ("strong approximation undefined for unsatisfiable f") when Pr_D[f=1] = 0.
num::Rational strong_eps(const TruthTable& f, const TruthTable& g, const Distribution& d);

struct ApproxReport {
  num::Rational error_prob;                  // Pr[f != g]
  num::Rational model_prob;                  // Pr[f = 1]
  num::Rational weak;                        // = error_prob
  std::optional<num::Rational> strong;       // absent when model_prob = 0
};

ApproxReport approx_report(const TruthTable& f, const TruthTable& g, const Distribution& d);

/// Smallest count n0 with n0 >= log2(1/eps) / (1 - alpha), computed with
/// exact integer arithmetic (log base 2); clamped at 0 when eps >= 1.
/// Beyond n0, any function with at most 2^(alpha n) models disagrees with the
/// constant-0 function on less than an eps fraction of assignments.
unsigned trivial_weak_threshold(const num::Rational& alpha, const num::Rational& eps);

}  // namespace kclab::boolfun
