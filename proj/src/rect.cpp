#include "kclab/rect.hpp"

#include <algorithm>
#include <stdexcept>

#include "kclab/parallel.hpp"

namespace kclab::rect {

Partition make_partition(unsigned n, std::vector<unsigned> x1) {
  std::sort(x1.begin(), x1.end());
  Partition p;
  p.n = n;
  p.x1 = std::move(x1);
  std::vector<bool> in1(n, false);
  for (unsigned v : p.x1) {
    if (v >= n || in1[v]) throw std::invalid_argument("invalid partition side");
    in1[v] = true;
  }
  for (unsigned v = 0; v < n; ++v)
    if (!in1[v]) p.x2.push_back(v);
  return p;
}

void validate_partition(const Partition& p) {
  std::vector<int> seen(p.n, 0);
  if (p.x1.size() + p.x2.size() != p.n) throw std::invalid_argument("partition does not cover all variables");
  for (unsigned v : p.x1) {
    if (v >= p.n || seen[v]++) throw std::invalid_argument("invalid partition");
  }
  for (unsigned v : p.x2) {
    if (v >= p.n || seen[v]++) throw std::invalid_argument("invalid partition");
  }
  if (!std::is_sorted(p.x1.begin(), p.x1.end()) || !std::is_sorted(p.x2.begin(), p.x2.end()))
    throw std::invalid_argument("partition sides must be sorted");
}

bool is_balanced(const Partition& p) {
  // n/3 <= |X1| <= 2n/3 without rounding: 3|X1| >= n and 3|X1| <= 2n.
  std::uint64_t k = p.x1.size();
  return 3 * k >= p.n && 3 * k <= 2ull * p.n;
}

std::uint64_t scatter(std::uint64_t local, const std::vector<unsigned>& vars) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < vars.size(); ++k)
    if ((local >> k) & 1u) out |= std::uint64_t{1} << vars[k];
  return out;
}

std::uint64_t gather(std::uint64_t global, const std::vector<unsigned>& vars) {
  std::uint64_t out = 0;
  for (std::size_t k = 0; k < vars.size(); ++k)
    if ((global >> vars[k]) & 1u) out |= std::uint64_t{1} << k;
  return out;
}

Rectangle make_rectangle(Partition part, std::vector<std::uint32_t> rho1,
                         std::vector<std::uint32_t> rho2) {
  validate_partition(part);
  auto canon = [](std::vector<std::uint32_t>& v, std::size_t side_vars) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (auto a : v)
      if (side_vars < 32 && a >= (std::uint32_t{1} << side_vars))
        throw std::invalid_argument("side assignment out of range");
  };
  canon(rho1, part.x1.size());
  canon(rho2, part.x2.size());
  Rectangle r;
  r.part = std::move(part);
  r.rho1 = std::move(rho1);
  r.rho2 = std::move(rho2);
  return r;
}

boolfun::TruthTable rect_function(const Rectangle& r) {
  boolfun::TruthTable t(r.part.n);
  for (auto a : r.rho1) {
    std::uint64_t ga = scatter(a, r.part.x1);
    for (auto b : r.rho2) t.set(ga | scatter(b, r.part.x2), true);
  }
  return t;
}

std::vector<std::uint64_t> rect_models(const Rectangle& r) {
  std::vector<std::uint64_t> out;
  out.reserve(r.model_count());
  for (auto a : r.rho1) {
    std::uint64_t ga = scatter(a, r.part.x1);
    for (auto b : r.rho2) out.push_back(ga | scatter(b, r.part.x2));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TpFp tp_fp(const boolfun::TruthTable& f, const Rectangle& r) {
  if (f.vars() != r.part.n) throw std::invalid_argument("variable counts differ");
  TpFp c;
  for (auto a : r.rho1) {
    std::uint64_t ga = scatter(a, r.part.x1);
    for (auto b : r.rho2) {
      if (f.get(ga | scatter(b, r.part.x2))) ++c.tp;
      else ++c.fp;
    }
  }
  return c;
}

DiscValue discrepancy(const boolfun::TruthTable& f, const Rectangle& r) {
  TpFp c = tp_fp(f, r);
  return {c.tp > c.fp ? c.tp - c.fp : c.fp - c.tp, f.vars()};
}

DiscValue discrepancy_tables(const boolfun::TruthTable& f, const boolfun::TruthTable& g) {
  std::uint64_t tp = boolfun::combine_and(f, g).count_models();
  std::uint64_t fp = g.count_models() - tp;
  return {tp > fp ? tp - fp : fp - tp, f.vars()};
}

CoverReport verify_cover(const boolfun::TruthTable& f, const Cover& cover,
                         bool require_disjoint, bool require_balanced) {
  CoverReport rep;
  boolfun::TruthTable acc = boolfun::TruthTable::constant(f.vars(), false);
  std::vector<boolfun::TruthTable> tables;
  tables.reserve(cover.rectangles.size());
  for (const auto& r : cover.rectangles) {
    if (r.part.n != f.vars()) throw std::invalid_argument("cover rectangle on wrong variable set");
    tables.push_back(rect_function(r));
    acc = boolfun::combine_or(acc, tables.back());
  }

  rep.equivalent = true;
  if (acc != f) {
    rep.equivalent = false;
    boolfun::TruthTable diff = boolfun::combine_xor(acc, f);
    for (std::uint64_t a = 0; a < diff.size(); ++a) {
      if (diff.get(a)) {
        rep.equivalence_witness = a;
        break;
      }
    }
  }

  rep.disjoint = true;
  for (std::size_t i = 0; i < tables.size() && rep.disjoint; ++i) {
    for (std::size_t j = i + 1; j < tables.size(); ++j) {
      boolfun::TruthTable shared = boolfun::combine_and(tables[i], tables[j]);
      if (shared.count_models() > 0) {
        rep.disjoint = false;
        rep.overlap_pair = {i, j};
        rep.overlap_witness = shared.models().front();
        break;
      }
    }
  }

  rep.balanced = true;
  for (std::size_t i = 0; i < cover.rectangles.size(); ++i) {
    if (!is_balanced(cover.rectangles[i].part)) {
      rep.balanced = false;
      rep.unbalanced_index = i;
      break;
    }
  }

  rep.ok = rep.equivalent && (!require_disjoint || rep.disjoint) &&
           (!require_balanced || rep.balanced);
  return rep;
}

Cover full_term_cover(const boolfun::TruthTable& f) {
  if (f.vars() < 2) throw std::invalid_argument("full_term_cover requires n >= 2");
  unsigned n = f.vars();
  unsigned k = (n + 1) / 2;
  std::vector<unsigned> x1(k);
  for (unsigned i = 0; i < k; ++i) x1[i] = i;
  Partition p = make_partition(n, x1);
  Cover c;
  for (std::uint64_t m = 0; m < f.size(); ++m) {
    if (!f.get(m)) continue;
    c.rectangles.push_back(make_rectangle(
        p, {static_cast<std::uint32_t>(gather(m, p.x1))},
        {static_cast<std::uint32_t>(gather(m, p.x2))}));
  }
  c.balanced = true;
  c.disjoint = true;
  c.equivalent = true;
  return c;
}

num::Rational weak_cover_bound(std::uint64_t model_count, unsigned n,
                               const num::Rational& eps, std::uint64_t delta) {
  if (delta == 0) throw std::invalid_argument("Delta must be positive");
  num::Rational mc(num::BigInt::from_uint64(model_count));
  num::Rational total(num::BigInt::pow2(n));
  return (mc - eps * total) / num::Rational(num::BigInt::from_uint64(delta));
}

num::Rational strong_cover_bound(std::uint64_t model_count, const num::Rational& eps,
                                 std::uint64_t delta) {
  if (delta == 0) throw std::invalid_argument("Delta must be positive");
  num::Rational mc(num::BigInt::from_uint64(model_count));
  return (num::Rational(1) - eps) * mc / num::Rational(num::BigInt::from_uint64(delta));
}

num::Rational strong_cover_pipeline(std::uint64_t model_count, unsigned n, unsigned m,
                                    const num::Rational& eps) {
  // (1 - eps) 2^(2m - n) model_count / 4, exact for either sign of 2m - n.
  num::Rational mc(num::BigInt::from_uint64(model_count));
  num::Rational scale = num::Rational::pow2(2 * static_cast<int>(m) - static_cast<int>(n));
  return (num::Rational(1) - eps) * scale * mc / num::Rational(4);
}

namespace {

MaxRectPartitionResult check_one_partition(const gf2::Matrix& h, unsigned s,
                                           const std::vector<unsigned>& x1) {
  unsigned n = h.cols();
  std::vector<unsigned> x2;
  std::vector<bool> in1(n, false);
  for (unsigned v : x1) in1[v] = true;
  for (unsigned v = 0; v < n; ++v)
    if (!in1[v]) x2.push_back(v);

  MaxRectPartitionResult res;
  res.x1 = x1;
  res.rank1 = gf2::rank_of_columns(h, x1);
  res.rank2 = gf2::rank_of_columns(h, x2);
  // Models of rho1 fill one coset of the kernel of H1, so the largest
  // rectangle entailed by the code has 2^(|X1|-rk1) * 2^(|X2|-rk2) models.
  res.max_rect_models = std::uint64_t{1} << (n - res.rank1 - res.rank2);
  std::uint64_t bound = std::uint64_t{1} << (n - 2 * s);
  res.holds = res.max_rect_models <= bound;
  return res;
}

std::vector<std::vector<unsigned>> balanced_x1_sets(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned k = 0; k <= n; ++k) {
    if (3 * k < n || 3 * k > 2 * n) continue;
    auto s = gf2::first_subset(k);
    do {
      out.push_back(s);
    } while (gf2::next_subset(s, n));
  }
  return out;
}

}  // namespace

MaxRectReport max_code_rectangle_check_serial(const gf2::Matrix& h, unsigned s, unsigned cap) {
  unsigned n = h.cols();
  if (n > cap) throw std::invalid_argument("max_code_rectangle_check: n exceeds partition cap");
  if (2 * s > n) throw std::invalid_argument("max_code_rectangle_check: 2s exceeds n");
  MaxRectReport rep;
  rep.n = n;
  rep.s = s;
  rep.bound = std::uint64_t{1} << (n - 2 * s);
  rep.all_hold = true;
  for (const auto& x1 : balanced_x1_sets(n)) {
    rep.partitions.push_back(check_one_partition(h, s, x1));
    if (!rep.partitions.back().holds) rep.all_hold = false;
  }
  return rep;
}

MaxRectReport max_code_rectangle_check(const gf2::Matrix& h, unsigned s, unsigned cap) {
  unsigned n = h.cols();
  if (n > cap) throw std::invalid_argument("max_code_rectangle_check: n exceeds partition cap");
  if (2 * s > n) throw std::invalid_argument("max_code_rectangle_check: 2s exceeds n");
  MaxRectReport rep;
  rep.n = n;
  rep.s = s;
  rep.bound = std::uint64_t{1} << (n - 2 * s);
  auto sets = balanced_x1_sets(n);
  rep.partitions.resize(sets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i)
    rep.partitions[i] = check_one_partition(h, s, sets[i]);
#else
  for (std::size_t i = 0; i < sets.size(); ++i)
    rep.partitions[i] = check_one_partition(h, s, sets[i]);
#endif
  rep.all_hold = true;
  for (const auto& pr : rep.partitions)
    if (!pr.holds) rep.all_hold = false;
  return rep;
}

Cover prune_cover(const boolfun::TruthTable& f, const Cover& cover) {
  Cover out;
  out.balanced = cover.balanced;
  out.disjoint = cover.disjoint;
  for (const auto& r : cover.rectangles) {
    TpFp c = tp_fp(f, r);
    if (c.fp > c.tp) continue;
    out.rectangles.push_back(r);
  }
  // Disjointness makes the disagreement drop by (fp - tp) >= 0 per removal.
  auto disagreement = [&](const Cover& c) {
    boolfun::TruthTable acc = boolfun::TruthTable::constant(f.vars(), false);
    for (const auto& r : c.rectangles) acc = boolfun::combine_or(acc, rect_function(r));
    return boolfun::combine_xor(acc, f).count_models();
  };
  if (disagreement(out) > disagreement(cover))
    throw std::logic_error("prune_cover increased disagreement; cover was not disjoint");
  out.equivalent = false;
  return out;
}

}  // namespace kclab::rect
