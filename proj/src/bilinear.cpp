#include "kclab/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kclab/rng.hpp"

namespace kclab::bilinear {

bool eval_form(const BilinearForm& bf, std::uint64_t x_bits, std::uint64_t y_bits) {
  // x^T (A y): compute A y once per y in callers that can, here directly.
  bool acc = false;
  for (unsigned i = 0; i < bf.nx(); ++i) {
    if (!((x_bits >> i) & 1u)) continue;
    bool row = false;
    for (unsigned j = 0; j < bf.ny(); ++j)
      if (((y_bits >> j) & 1u) && bf.a.get(i, j)) row = !row;
    acc ^= row;
  }
  return acc;
}

boolfun::TruthTable bilinear_function(const BilinearForm& bf) {
  unsigned nx = bf.nx(), ny = bf.ny();
  boolfun::TruthTable t(nx + ny);
  // Precompute A y per y block, then x rows are popcount parities.
  for (std::uint64_t y = 0; y < (std::uint64_t{1} << ny); ++y) {
    std::uint64_t ay = 0;  // bit i = (A y)_i
    for (unsigned i = 0; i < nx; ++i) {
      bool bit = false;
      for (unsigned j = 0; j < ny; ++j)
        if (((y >> j) & 1u) && bf.a.get(i, j)) bit = !bit;
      if (bit) ay |= std::uint64_t{1} << i;
    }
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << nx); ++x) {
      if (__builtin_popcountll(x & ay) & 1)
        t.set((y << nx) | x, true);
    }
  }
  return t;
}

std::uint64_t expected_bilinear_count(unsigned nx, unsigned ny, unsigned rank) {
  // 2^(nx+ny-1) (1 - 2^(-rank)) = 2^(nx+ny-1) - 2^(nx+ny-1-rank)
  if (rank == 0) return 0;
  return (std::uint64_t{1} << (nx + ny - 1)) - (std::uint64_t{1} << (nx + ny - 1 - rank));
}

namespace {

num::Rational rational_from_double(double d) {
  // Every finite double is p / 2^k exactly.
  if (d == 0.0) return num::Rational(0);
  int exp = 0;
  double mant = std::frexp(d, &exp);  // d = mant * 2^exp, |mant| in [0.5, 1)
  std::int64_t m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  return num::Rational(num::BigInt(m)) * num::Rational::pow2(exp - 53);
}

}  // namespace

AjtaiReport ajtai_check(const gf2::Matrix& a, const num::Rational& delta,
                        std::uint64_t budget, std::uint64_t sample_trials, std::uint64_t seed) {
  if (delta.sign() <= 0 || delta > num::Rational(1))
    throw std::invalid_argument("delta must lie in (0, 1]");
  if (a.rows() != a.cols()) throw std::invalid_argument("ajtai_check requires a square matrix");
  unsigned n = a.rows();
  AjtaiReport rep;
  if (delta == num::Rational(1)) {
    rep.delta_prime = num::Rational(0);  // log2(1/delta) = 0; degenerate case
  } else {
    double log_inv = std::log2(1.0 / delta.to_double());
    rep.delta_prime = delta * rational_from_double(1.0 / ((256.0 * log_inv) * (256.0 * log_inv)));
  }
  rep.submatrix_size = static_cast<unsigned>((delta * num::Rational(n)).ceil().to_uint64());
  rep.required_rank = static_cast<unsigned>((rep.delta_prime * num::Rational(n)).ceil().to_uint64());
  unsigned k = rep.submatrix_size;

  std::uint64_t combos = gf2::binomial(n, k);
  rep.exhaustive = combos <= 100000000ull && combos * combos <= budget;
  rep.holds = true;

  auto rank_of = [&](const std::vector<unsigned>& rows, const std::vector<unsigned>& cols) {
    return gf2::rank(gf2::submatrix(a, rows, cols));
  };

  if (rep.exhaustive) {
    auto rows = gf2::first_subset(k);
    do {
      auto cols = gf2::first_subset(k);
      do {
        ++rep.checked;
        if (rank_of(rows, cols) < rep.required_rank) {
          rep.holds = false;
          rep.witness_rows = rows;
          rep.witness_cols = cols;
          return rep;
        }
      } while (gf2::next_subset(cols, n));
    } while (gf2::next_subset(rows, n));
  } else {
    Rng g(seed);
    auto sample_subset = [&](unsigned size) {
      std::vector<unsigned> pool(n);
      for (unsigned i = 0; i < n; ++i) pool[i] = i;
      std::vector<unsigned> out;
      for (unsigned i = 0; i < size; ++i) {
        std::size_t pick = static_cast<std::size_t>(g.next_below(pool.size()));
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      std::sort(out.begin(), out.end());
      return out;
    };
    for (std::uint64_t t = 0; t < sample_trials; ++t) {
      auto rows = sample_subset(k);
      auto cols = sample_subset(k);
      ++rep.checked;
      if (rank_of(rows, cols) < rep.required_rank) {
        rep.holds = false;
        rep.witness_rows = rows;
        rep.witness_cols = cols;
        return rep;
      }
    }
  }
  return rep;
}

AffineConditioning condition_to_affine(const BilinearForm& bf, std::vector<unsigned> c,
                                       std::vector<unsigned> r,
                                       const std::vector<std::pair<unsigned, bool>>& a) {
  unsigned nx = bf.nx(), ny = bf.ny();
  std::sort(c.begin(), c.end());
  std::sort(r.begin(), r.end());
  if (std::adjacent_find(c.begin(), c.end()) != c.end() ||
      std::adjacent_find(r.begin(), r.end()) != r.end())
    throw std::invalid_argument("duplicate index in C or R");
  for (unsigned v : c)
    if (v >= nx) throw std::invalid_argument("C must lie in the X block");
  for (unsigned v : r)
    if (v < nx || v >= nx + ny) throw std::invalid_argument("R must lie in the Y block");

  std::vector<int> fixed(nx + ny, -1);
  for (auto [v, bit] : a) {
    if (v >= nx + ny || fixed[v] != -1) throw std::invalid_argument("bad conditioning assignment");
    fixed[v] = bit ? 1 : 0;
  }
  for (unsigned v : c)
    if (fixed[v] != -1) throw std::invalid_argument("C overlaps the conditioned assignment");
  for (unsigned v : r)
    if (fixed[v] != -1) throw std::invalid_argument("R overlaps the conditioned assignment");
  std::uint64_t assigned = a.size() + c.size() + r.size();
  if (assigned != nx + ny)
    throw std::invalid_argument("assignment must cover exactly the complement of C u R");

  AffineConditioning ac;
  ac.c = c;
  ac.r = r;
  unsigned kc = static_cast<unsigned>(c.size()), kr = static_cast<unsigned>(r.size());
  ac.a_sub = gf2::Matrix(kc, kr);
  ac.u = gf2::Vector(kr);
  ac.v = gf2::Vector(kc);

  // Split contributions of x^T A y by whether the x row / y column is kept.
  for (unsigned i = 0; i < nx; ++i) {
    bool i_kept = std::binary_search(c.begin(), c.end(), i);
    for (unsigned j = 0; j < ny; ++j) {
      if (!bf.a.get(i, j)) continue;
      unsigned yv = nx + j;
      bool j_kept = std::binary_search(r.begin(), r.end(), yv);
      if (i_kept && j_kept) {
        unsigned ci = static_cast<unsigned>(std::lower_bound(c.begin(), c.end(), i) - c.begin());
        unsigned rj = static_cast<unsigned>(std::lower_bound(r.begin(), r.end(), yv) - r.begin());
        ac.a_sub.set(ci, rj, !ac.a_sub.get(ci, rj));
      } else if (i_kept && !j_kept) {
        if (fixed[yv] == 1) {
          unsigned ci = static_cast<unsigned>(std::lower_bound(c.begin(), c.end(), i) - c.begin());
          ac.v.set(ci, !ac.v.get(ci));
        }
      } else if (!i_kept && j_kept) {
        if (fixed[i] == 1) {
          unsigned rj = static_cast<unsigned>(std::lower_bound(r.begin(), r.end(), yv) - r.begin());
          ac.u.set(rj, !ac.u.get(rj));
        }
      } else {
        if (fixed[i] == 1 && fixed[yv] == 1) ac.lambda = !ac.lambda;
      }
    }
  }
  return ac;
}

bool affine_eval(const AffineConditioning& ac, std::uint64_t x_local, std::uint64_t y_local) {
  bool acc = ac.lambda;
  unsigned kc = static_cast<unsigned>(ac.c.size()), kr = static_cast<unsigned>(ac.r.size());
  for (unsigned i = 0; i < kc; ++i) {
    if (!((x_local >> i) & 1u)) continue;
    if (ac.v.get(i)) acc = !acc;
    for (unsigned j = 0; j < kr; ++j)
      if (((y_local >> j) & 1u) && ac.a_sub.get(i, j)) acc = !acc;
  }
  for (unsigned j = 0; j < kr; ++j)
    if (((y_local >> j) & 1u) && ac.u.get(j)) acc = !acc;
  return acc;
}

boolfun::TruthTable affine_function(const AffineConditioning& ac) {
  unsigned kc = static_cast<unsigned>(ac.c.size()), kr = static_cast<unsigned>(ac.r.size());
  return boolfun::TruthTable::from_predicate(kc + kr, [&](std::uint64_t z) {
    std::uint64_t x = z & ((std::uint64_t{1} << kc) - 1);
    std::uint64_t y = z >> kc;
    return affine_eval(ac, x, y);
  });
}

BilinearForm bilinear_extension(const AffineConditioning& ac) {
  unsigned kc = static_cast<unsigned>(ac.c.size()), kr = static_cast<unsigned>(ac.r.size());
  gf2::Matrix ext(kc + 1, kr + 1);
  ext.set(0, 0, ac.lambda);
  for (unsigned j = 0; j < kr; ++j) ext.set(0, j + 1, ac.u.get(j));
  for (unsigned i = 0; i < kc; ++i) ext.set(i + 1, 0, ac.v.get(i));
  for (unsigned i = 0; i < kc; ++i)
    for (unsigned j = 0; j < kr; ++j) ext.set(i + 1, j + 1, ac.a_sub.get(i, j));
  return BilinearForm{ext};
}

SubrectSelection subrectangle_select(const rect::Rectangle& r, const num::Rational& delta) {
  if (r.part.n % 2 != 0) throw std::invalid_argument("rectangle must sit on 2n variables");
  unsigned n = r.part.n / 2;
  if (delta.sign() <= 0 || delta > num::Rational(2, 3))
    throw std::invalid_argument("delta must lie in (0, 2/3]");
  if (!rect::is_balanced(r.part)) throw std::invalid_argument("rectangle must be balanced");

  unsigned k = static_cast<unsigned>((delta * num::Rational(n)).ceil().to_uint64());

  // Block decomposition of the rectangle's own partition.
  std::vector<unsigned> x1, x2, y1, y2;
  for (unsigned v : r.part.x1) (v < n ? x1 : y1).push_back(v);
  for (unsigned v : r.part.x2) (v < n ? x2 : y2).push_back(v);

  SubrectSelection sel;
  // Valid pools: S_X avoids the X2 side (so the rho1 factor keeps only S_X
  // variables) and S_Y avoids the Y1 side; or the same with labels swapped.
  if (x1.size() >= k && y2.size() >= k) {
    sel.swapped = false;
    sel.s_x.assign(x1.begin(), x1.begin() + k);
    sel.s_y.assign(y2.begin(), y2.begin() + k);
  } else if (x2.size() >= k && y1.size() >= k) {
    sel.swapped = true;
    sel.s_x.assign(x2.begin(), x2.begin() + k);
    sel.s_y.assign(y1.begin(), y1.begin() + k);
  } else {
    throw std::invalid_argument("subrectangle_select: no feasible orientation for this delta");
  }
  return sel;
}

DiscBoundReport discrepancy_bound_checks(const BilinearForm& bf, const rect::Rectangle& r,
                                         const num::Rational& delta) {
  if (r.part.n != bf.vars()) throw std::invalid_argument("variable counts differ");
  boolfun::TruthTable f = bilinear_function(bf);
  DiscBoundReport rep;
  rep.disc = rect::discrepancy(f, r);

  // Rank bound, exact: disc <= 2^(-rk/2)  <=>  num^2 * 2^rk <= (2^2n)^2.
  std::vector<unsigned> xblock(bf.nx());
  for (unsigned i = 0; i < bf.nx(); ++i) xblock[i] = i;
  rep.rank_check_applicable = r.part.x1 == xblock;
  rep.rank = gf2::rank(bf.a);
  if (rep.rank_check_applicable) {
    num::BigInt lhs = num::BigInt::from_uint64(rep.disc.numerator);
    lhs *= num::BigInt::from_uint64(rep.disc.numerator);
    lhs *= num::BigInt::pow2(rep.rank);
    rep.rank_check_holds = lhs <= num::BigInt::pow2(2 * rep.disc.n);
  }

  // Averaging over conditionings of the complement of the selected S.
  SubrectSelection sel;
  try {
    sel = subrectangle_select(r, delta);
  } catch (const std::invalid_argument&) {
    return rep;  // infeasible for this rectangle/delta; averaging not applicable
  }
  rep.averaging_applicable = true;

  std::vector<unsigned> kept = sel.s_x;
  kept.insert(kept.end(), sel.s_y.begin(), sel.s_y.end());
  std::sort(kept.begin(), kept.end());
  std::vector<unsigned> complement;
  {
    std::vector<bool> in_kept(f.vars(), false);
    for (unsigned v : kept) in_kept[v] = true;
    for (unsigned v = 0; v < f.vars(); ++v)
      if (!in_kept[v]) complement.push_back(v);
  }

  boolfun::TruthTable rtab = rect::rect_function(r);
  num::Rational max_disc, sum_disc;
  num::Rational p_a = num::Rational::pow2(-static_cast<int>(complement.size()));
  std::uint64_t num_a = std::uint64_t{1} << complement.size();

  // Bridge sampling: all assignments when few, a seeded sample otherwise.
  std::vector<std::uint64_t> bridge_as;
  if (num_a <= 64) {
    for (std::uint64_t a = 0; a < num_a; ++a) bridge_as.push_back(a);
  } else {
    Rng g(7);
    for (int t = 0; t < 16; ++t) bridge_as.push_back(g.next_below(num_a));
    std::sort(bridge_as.begin(), bridge_as.end());
    bridge_as.erase(std::unique(bridge_as.begin(), bridge_as.end()), bridge_as.end());
  }

  for (std::uint64_t abits = 0; abits < num_a; ++abits) {
    std::vector<std::pair<unsigned, bool>> assign;
    for (std::size_t i = 0; i < complement.size(); ++i)
      assign.emplace_back(complement[i], (abits >> i) & 1u);
    boolfun::TruthTable fa = boolfun::condition(f, assign);
    boolfun::TruthTable ra = boolfun::condition(rtab, assign);
    num::Rational d = rect::discrepancy_tables(fa, ra).value();
    if (d > max_disc) max_disc = d;
    sum_disc += d * p_a;

    if (std::binary_search(bridge_as.begin(), bridge_as.end(), abits)) {
      // fhat on ({e1} u S_X, {e2} u S_Y); conditioning e1 = e2 = 1 recovers fa.
      AffineConditioning ac = condition_to_affine(bf, sel.s_x, sel.s_y, assign);
      BilinearForm fhat = bilinear_extension(ac);
      boolfun::TruthTable fhat_tab = bilinear_function(fhat);
      unsigned kc = static_cast<unsigned>(sel.s_x.size());
      boolfun::TruthTable rhat_tab = boolfun::TruthTable::from_predicate(
          fhat_tab.vars(), [&](std::uint64_t z) {
            bool e1 = z & 1u;
            bool e2 = (z >> (kc + 1)) & 1u;
            if (!e1 || !e2) return false;
            std::uint64_t x = (z >> 1) & ((std::uint64_t{1} << kc) - 1);
            std::uint64_t y = z >> (kc + 2);
            return ra.get((y << kc) | x);
          });
      rect::DiscValue dhat = rect::discrepancy_tables(fhat_tab, rhat_tab);
      ++rep.bridge_checked;
      if (dhat.value() * num::Rational(4) != d) rep.bridge_equal = false;
    }
  }
  rep.max_conditioned_disc = max_disc;
  rep.avg_conditioned_disc = sum_disc;
  num::Rational disc_val = rep.disc.value();
  rep.averaging_max_holds = disc_val <= max_disc;
  rep.averaging_avg_holds = disc_val <= sum_disc;
  return rep;
}

}  // namespace kclab::bilinear
