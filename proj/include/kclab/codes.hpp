#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kclab/boolfun.hpp"
#include "kclab/gf2.hpp"
#include "kclab/rect.hpp"

namespace kclab::codes {

/// Linear code of length n given by its m x n parity check matrix: the
/// characteristic function accepts x exactly when H x = 0.
struct LinearCode {
  gf2::Matrix h;
  unsigned length() const { return h.cols(); }
};

/// Explicit characteristic function; has 2^(n - rank(H)) models.
boolfun::TruthTable char_function(const LinearCode& code);

/// True iff the global assignment is a code word.
bool is_code_word(const LinearCode& code, std::uint64_t assignment);

/// Maximal product subset (A, B) of (S1, S2) whose members combine to models.
struct CorePair {
  std::vector<std::uint32_t> a;  // assignments over X1, sorted
  std::vector<std::uint32_t> b;  // assignments over X2, sorted
  std::optional<gf2::Vector> w;  // common value H1 a = H2 b, absent when empty
  std::uint64_t product_size() const { return std::uint64_t{1} * a.size() * b.size(); }
};

/// Core extraction for codes: bucket S1 by H1 a and S2 by H2 b and take the
/// common value maximizing |S1_w| |S2_w|. Exact and polynomial. Ties resolved
/// by the lexicographically smallest w (component 0 compared first), which
/// also fixes A. Returns empty sets iff S1 x S2 holds no model.
CorePair core_extract_code(const LinearCode& code, const rect::Partition& part,
                           const std::vector<std::uint32_t>& s1,
                           const std::vector<std::uint32_t>& s2);

/// Brute-force maximum product subset of (S1 x S2) intersected with f's
/// models, for arbitrary f. Enumerates subsets of the smaller side; oracle
/// use only, requires |S1| + |S2| <= cap (default 24).
CorePair core_extract_bruteforce(const boolfun::TruthTable& f, const rect::Partition& part,
                                 const std::vector<std::uint32_t>& s1,
                                 const std::vector<std::uint32_t>& s2, unsigned cap = 24);

struct CoreStep {
  std::vector<std::uint32_t> a, b;       // core sides, local assignments
  std::vector<std::uint64_t> f_set;      // F_i as global assignments, sorted
};

/// Verification flags are computed during construction; all are expected true.
struct CoreTrace {
  std::vector<CoreStep> steps;  // the l nonempty steps; the final empty pair is implicit
  std::size_t l = 0;
  bool f_all_false_positives = true;
  bool f_pairwise_disjoint = true;
  bool cores_cover_r_and_f = true;
  bool cores_disjoint = true;
  bool sizes_nonincreasing = true;
  bool all_checks() const {
    return f_all_false_positives && f_pairwise_disjoint && cores_cover_r_and_f &&
           cores_disjoint && sizes_nonincreasing;
  }
};

/// Iterative core extraction: repeatedly extract cores from what is left of
/// the rectangle's sides until no model remains.
CoreTrace iterative_extraction(const LinearCode& code, const rect::Rectangle& r);

struct DiscCoreReport {
  bool precondition_ok = false;  // tp >= fp
  std::uint64_t tp = 0, fp = 0;
  rect::DiscValue disc;
  std::uint64_t core_size = 0;
  bool holds = false;  // Disc(f, r) <= core_size / 2^n
};

/// Checks the discrepancy-versus-core inequality with the first extracted
/// core. A rectangle with tp < fp is reported as precondition-failed, not an
/// error: such rectangles are prunable rather than invalid.
DiscCoreReport disc_core_bound_check(const LinearCode& code, const rect::Rectangle& r);

}  // namespace kclab::codes
