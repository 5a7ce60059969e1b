#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kclab/boolfun.hpp"
#include "kclab/gf2.hpp"
#include "kclab/rational.hpp"
#include "kclab/rect.hpp"

namespace kclab::bilinear {

/// Bilinear form f(x, y) = x^T A y over the two-element field. Rows of A are
/// indexed by the X block, columns by the Y block. In the function view the
/// X block occupies variables 0..nx-1 and the Y block nx..nx+ny-1.
struct BilinearForm {
  gf2::Matrix a;
  unsigned nx() const { return a.rows(); }
  unsigned ny() const { return a.cols(); }
  unsigned vars() const { return nx() + ny(); }
};

bool eval_form(const BilinearForm& bf, std::uint64_t x_bits, std::uint64_t y_bits);

/// Explicit truth table on nx + ny variables; the model count is exactly
/// 2^(nx+ny-1) (1 - 2^(-rank A)).
boolfun::TruthTable bilinear_function(const BilinearForm& bf);

std::uint64_t expected_bilinear_count(unsigned nx, unsigned ny, unsigned rank);

struct AjtaiReport {
  bool holds = false;
  num::Rational delta_prime;       // delta / (256 log2(1/delta))^2, dyadic
  unsigned submatrix_size = 0;     // ceil(delta * n)
  unsigned required_rank = 0;      // ceil(delta_prime * n)
  bool exhaustive = false;
  std::uint64_t checked = 0;
  std::optional<std::vector<unsigned>> witness_rows, witness_cols;  // on failure
};

/// Checks whether every ceil(delta n) x ceil(delta n) submatrix has rank at
/// least ceil(delta' n). Exhaustive when the number of submatrix pairs fits
/// the budget, otherwise seeded random sampling (declared in the report).
/// delta' uses log base 2 computed in IEEE double and kept as the exact
/// dyadic rational of that double; delta = 1 degenerates to delta' = 0.
AjtaiReport ajtai_check(const gf2::Matrix& a, const num::Rational& delta,
                        std::uint64_t budget = 200000, std::uint64_t sample_trials = 2000,
                        std::uint64_t seed = 1);

/// f conditioned on an assignment of everything outside C u R:
/// f_a(x_C, y_R) = x_C^T A_sub y_R + x_C^T v + u^T y_R + lambda.
struct AffineConditioning {
  gf2::Matrix a_sub;            // A restricted to rows C, cols R
  gf2::Vector u;                // over R
  gf2::Vector v;                // over C
  bool lambda = false;
  std::vector<unsigned> c;      // retained X-block variable indices, sorted
  std::vector<unsigned> r;      // retained Y-block variable indices, sorted
};

/// a assigns exactly the complement of C u R (global variable indices).
AffineConditioning condition_to_affine(const BilinearForm& bf, std::vector<unsigned> c,
                                       std::vector<unsigned> r,
                                       const std::vector<std::pair<unsigned, bool>>& a);

bool affine_eval(const AffineConditioning& ac, std::uint64_t x_local, std::uint64_t y_local);
boolfun::TruthTable affine_function(const AffineConditioning& ac);

/// Bordered extension ((lambda, u^T) / (v, A_sub)) on variables
/// ({e1} u C, {e2} u R); conditioning it on e1 = 1, e2 = 1 gives back the
/// affine form, and rank grows or stays equal.
BilinearForm bilinear_extension(const AffineConditioning& ac);

struct SubrectSelection {
  std::vector<unsigned> s_x;  // subset of the X block, size ceil(delta n)
  std::vector<unsigned> s_y;  // subset of the Y block, same size
  bool swapped = false;       // rectangle side labels swapped during normalization
};

/// Picks retained sets (S_X, S_Y) such that conditioning the rectangle on any
/// assignment of the other variables yields a rectangle with respect to
/// (S_X, S_Y): S_X avoids the X2 side and S_Y avoids the Y1 side, swapping
/// side labels first when needed. Throws when r is unbalanced, delta is
/// outside (0, 2/3], or neither orientation has large enough pools.
SubrectSelection subrectangle_select(const rect::Rectangle& r, const num::Rational& delta);

struct DiscBoundReport {
  rect::DiscValue disc;                  // Disc(f, r)
  // Disc(f, r) <= 2^(-rank(A)/2), compared exactly via squaring; only
  // applicable when the rectangle's partition is exactly (X block, Y block).
  bool rank_check_applicable = false;
  unsigned rank = 0;
  bool rank_check_holds = false;
  // Disc(f, r) <= max_a Disc(f_a, r_a) and <= sum_a p_a Disc(f_a, r_a).
  bool averaging_applicable = false;
  num::Rational max_conditioned_disc;
  num::Rational avg_conditioned_disc;
  bool averaging_max_holds = false;
  bool averaging_avg_holds = false;
  // Disc(fhat_a, rhat_a) = (1/4) Disc(f_a, r_a) for every checked a.
  std::uint64_t bridge_checked = 0;
  bool bridge_equal = true;
};

DiscBoundReport discrepancy_bound_checks(const BilinearForm& bf, const rect::Rectangle& r,
                                         const num::Rational& delta = num::Rational(1, 3));

}  // namespace kclab::bilinear
