#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kclab/boolfun.hpp"
#include "kclab/gf2.hpp"
#include "kclab/rational.hpp"

namespace kclab::rect {

/// Variable partition (X1, X2): disjoint sorted index sets covering 0..n-1.
struct Partition {
  unsigned n = 0;
  std::vector<unsigned> x1, x2;
};

/// Builds a partition from n and the X1 side; X2 is the complement.
Partition make_partition(unsigned n, std::vector<unsigned> x1);
void validate_partition(const Partition& p);

/// Exact rational balance test: n/3 <= |X1| <= 2n/3 (closed bounds, no rounding).
bool is_balanced(const Partition& p);

/// Local assignments use the sorted order of their index set: bit k of a local
/// assignment is the value of the k-th smallest variable index in the set.
std::uint64_t scatter(std::uint64_t local, const std::vector<unsigned>& vars);
std::uint64_t gather(std::uint64_t global, const std::vector<unsigned>& vars);

/// Combinatorial rectangle: rho1 x rho2 over a partition; model sets are
/// sorted, duplicate-free local assignment lists.
struct Rectangle {
  Partition part;
  std::vector<std::uint32_t> rho1;  // assignments over X1
  std::vector<std::uint32_t> rho2;  // assignments over X2

  std::uint64_t model_count() const {
    return std::uint64_t{1} * rho1.size() * rho2.size();
  }
  bool empty() const { return rho1.empty() || rho2.empty(); }
};

Rectangle make_rectangle(Partition part, std::vector<std::uint32_t> rho1,
                         std::vector<std::uint32_t> rho2);

/// The rectangle as an explicit function on all n variables.
boolfun::TruthTable rect_function(const Rectangle& r);

/// Enumerates the rectangle's models as global assignment integers, sorted.
std::vector<std::uint64_t> rect_models(const Rectangle& r);

struct Cover {
  std::vector<Rectangle> rectangles;
  bool balanced = false;
  bool disjoint = false;
  bool equivalent = false;  // verified against the target function
  std::size_t size() const { return rectangles.size(); }
};

/// Exact discrepancy value |tp - fp| / 2^n.
struct DiscValue {
  std::uint64_t numerator = 0;
  unsigned n = 0;
  num::Rational value() const {
    return num::Rational(num::BigInt::from_uint64(numerator), num::BigInt::pow2(n));
  }
};

struct TpFp {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
};

TpFp tp_fp(const boolfun::TruthTable& f, const Rectangle& r);
DiscValue discrepancy(const boolfun::TruthTable& f, const Rectangle& r);
/// Discrepancy of f against an arbitrary region g (used for conditioned pieces).
DiscValue discrepancy_tables(const boolfun::TruthTable& f, const boolfun::TruthTable& g);

struct CoverReport {
  bool equivalent = false;
  bool disjoint = false;
  bool balanced = false;
  bool ok = false;  // equivalent plus all required flags
  std::optional<std::uint64_t> equivalence_witness;           // first disagreeing assignment
  std::optional<std::pair<std::size_t, std::size_t>> overlap_pair;
  std::optional<std::uint64_t> overlap_witness;               // shared model
  std::optional<std::size_t> unbalanced_index;
};

/// Checks cover equivalence with f (exact), pairwise model-disjointness and
/// per-rectangle balance. Failures are report entries, not errors.
CoverReport verify_cover(const boolfun::TruthTable& f, const Cover& cover,
                         bool require_disjoint = true, bool require_balanced = true);

/// One rectangle per model, split at ceil(n/2); balanced and disjoint. n >= 2.
Cover full_term_cover(const boolfun::TruthTable& f);

/// Exact rational (model_count - eps 2^n) / Delta; callers clamp/ceil.
num::Rational weak_cover_bound(std::uint64_t model_count, unsigned n,
                               const num::Rational& eps, std::uint64_t delta);

/// Exact rational (1 - eps) model_count / Delta.
num::Rational strong_cover_bound(std::uint64_t model_count, const num::Rational& eps,
                                 std::uint64_t delta);

/// The strong bound instantiated with Delta = 2^(n - 2(m-1)); equals
/// (1 - eps) 2^(2m-n) model_count / 4.
num::Rational strong_cover_pipeline(std::uint64_t model_count, unsigned n, unsigned m,
                                    const num::Rational& eps);

struct MaxRectPartitionResult {
  std::vector<unsigned> x1;
  unsigned rank1 = 0, rank2 = 0;
  std::uint64_t max_rect_models = 0;  // 2^(n - rk(H1) - rk(H2))
  bool holds = false;                 // max_rect_models <= 2^(n - 2s)
};

struct MaxRectReport {
  unsigned n = 0;
  unsigned s = 0;
  std::uint64_t bound = 0;  // 2^(n - 2s)
  bool all_hold = false;
  std::vector<MaxRectPartitionResult> partitions;
};

/// For every balanced partition, the largest rectangle entailed by the code of
/// parity check H has exactly 2^(n - rk(H1) - rk(H2)) models (coset structure);
/// checks that against 2^(n - 2s). Exhaustive over partitions, n <= 12.
/// OpenMP-parallel across partitions with index-ordered aggregation.
MaxRectReport max_code_rectangle_check(const gf2::Matrix& parity_check, unsigned s,
                                       unsigned cap = 12);
MaxRectReport max_code_rectangle_check_serial(const gf2::Matrix& parity_check, unsigned s,
                                              unsigned cap = 12);

/// Removes every rectangle with fp > tp from a disjoint cover; the pruned
/// cover never disagrees with f on more points than the original.
Cover prune_cover(const boolfun::TruthTable& f, const Cover& cover);

}  // namespace kclab::rect
