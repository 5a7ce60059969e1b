#include "kclab/codes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace kclab::codes {

boolfun::TruthTable char_function(const LinearCode& code) {
  unsigned n = code.length();
  return boolfun::TruthTable::from_predicate(
      n, [&](std::uint64_t a) { return is_code_word(code, a); });
}

bool is_code_word(const LinearCode& code, std::uint64_t assignment) {
  gf2::Vector x(code.length());
  for (unsigned i = 0; i < code.length(); ++i) x.set(i, (assignment >> i) & 1u);
  return code.h.mul(x).is_zero();
}

namespace {

gf2::Matrix columns_of(const gf2::Matrix& h, const std::vector<unsigned>& cols) {
  std::vector<unsigned> all_rows(h.rows());
  for (unsigned i = 0; i < h.rows(); ++i) all_rows[i] = i;
  return gf2::submatrix(h, all_rows, cols);
}

gf2::Vector side_image(const gf2::Matrix& h_side, std::uint32_t local) {
  gf2::Vector x(h_side.cols());
  for (unsigned k = 0; k < h_side.cols(); ++k) x.set(k, (local >> k) & 1u);
  return h_side.mul(x);
}

void check_partition_for(const LinearCode& code, const rect::Partition& part) {
  if (part.n != code.length())
    throw std::invalid_argument("partition does not match code length");
  rect::validate_partition(part);
}

void check_side_range(const std::vector<std::uint32_t>& s, std::size_t side_vars) {
  for (auto a : s)
    if (side_vars < 32 && a >= (std::uint32_t{1} << side_vars))
      throw std::invalid_argument("side assignment out of range");
}

}  // namespace

CorePair core_extract_code(const LinearCode& code, const rect::Partition& part,
                           const std::vector<std::uint32_t>& s1,
                           const std::vector<std::uint32_t>& s2) {
  check_partition_for(code, part);
  check_side_range(s1, part.x1.size());
  check_side_range(s2, part.x2.size());
  CorePair out;
  if (s1.empty() || s2.empty()) return out;

  gf2::Matrix h1 = columns_of(code.h, part.x1);
  gf2::Matrix h2 = columns_of(code.h, part.x2);

  // (a, b) is a model iff H1 a = H2 b; bucket both sides by that value.
  std::map<std::uint64_t, std::vector<std::uint32_t>> bucket1, bucket2;
  for (auto a : s1) bucket1[side_image(h1, a).lex_key()].push_back(a);
  for (auto b : s2) bucket2[side_image(h2, b).lex_key()].push_back(b);

  std::uint64_t best = 0;
  std::uint64_t best_key = 0;
  for (const auto& [key, as] : bucket1) {
    auto it = bucket2.find(key);
    if (it == bucket2.end()) continue;
    std::uint64_t prod = std::uint64_t{1} * as.size() * it->second.size();
    if (prod > best) {  // map iteration is key-ascending, so ties keep the smallest w
      best = prod;
      best_key = key;
    }
  }
  if (best == 0) return out;

  out.a = bucket1[best_key];
  out.b = bucket2[best_key];
  std::sort(out.a.begin(), out.a.end());
  std::sort(out.b.begin(), out.b.end());
  gf2::Vector w(code.h.rows());
  for (unsigned i = 0; i < w.len(); ++i)
    w.set(i, (best_key >> (w.len() - 1 - i)) & 1u);
  out.w = w;
  return out;
}

CorePair core_extract_bruteforce(const boolfun::TruthTable& f, const rect::Partition& part,
                                 const std::vector<std::uint32_t>& s1,
                                 const std::vector<std::uint32_t>& s2, unsigned cap) {
  if (part.n != f.vars()) throw std::invalid_argument("partition does not match function");
  rect::validate_partition(part);
  check_side_range(s1, part.x1.size());
  check_side_range(s2, part.x2.size());
  if (s1.size() + s2.size() > cap)
    throw std::invalid_argument("core_extract_bruteforce: size over oracle cap");
  CorePair out;
  if (s1.empty() || s2.empty()) return out;

  // model(a, b) bitmask per a over the s2 positions
  std::vector<std::uint64_t> adj(s1.size(), 0);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    std::uint64_t ga = rect::scatter(s1[i], part.x1);
    for (std::size_t j = 0; j < s2.size(); ++j) {
      if (f.get(ga | rect::scatter(s2[j], part.x2))) adj[i] |= std::uint64_t{1} << j;
    }
  }

  // Enumerate subsets of the smaller side; the other side is the common
  // neighborhood. Covers every maximal product subset.
  bool swap_sides = s1.size() > s2.size();
  std::size_t small_n = swap_sides ? s2.size() : s1.size();
  std::uint64_t best = 0;
  std::uint64_t best_small_mask = 0, best_big_mask = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << small_n); ++mask) {
    std::uint64_t common;
    std::size_t small_count = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (!swap_sides) {
      common = ~std::uint64_t{0};
      for (std::size_t i = 0; i < s1.size(); ++i)
        if ((mask >> i) & 1u) common &= adj[i];
      common &= (s2.size() == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << s2.size()) - 1;
    } else {
      common = 0;
      for (std::size_t i = 0; i < s1.size(); ++i) {
        bool all = true;
        for (std::size_t j = 0; j < s2.size(); ++j)
          if (((mask >> j) & 1u) && !((adj[i] >> j) & 1u)) {
            all = false;
            break;
          }
        if (all) common |= std::uint64_t{1} << i;
      }
    }
    std::uint64_t prod = small_count * static_cast<std::uint64_t>(__builtin_popcountll(common));
    if (prod > best) {
      best = prod;
      best_small_mask = mask;
      best_big_mask = common;
    }
  }
  if (best == 0) return out;
  std::uint64_t mask1 = swap_sides ? best_big_mask : best_small_mask;
  std::uint64_t mask2 = swap_sides ? best_small_mask : best_big_mask;
  for (std::size_t i = 0; i < s1.size(); ++i)
    if ((mask1 >> i) & 1u) out.a.push_back(s1[i]);
  for (std::size_t j = 0; j < s2.size(); ++j)
    if ((mask2 >> j) & 1u) out.b.push_back(s2[j]);
  std::sort(out.a.begin(), out.a.end());
  std::sort(out.b.begin(), out.b.end());
  return out;
}

namespace {

std::vector<std::uint32_t> set_minus(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::uint64_t> product_assignments(const std::vector<std::uint32_t>& as,
                                               const std::vector<std::uint32_t>& bs,
                                               const rect::Partition& part) {
  std::vector<std::uint64_t> out;
  out.reserve(as.size() * bs.size());
  for (auto a : as) {
    std::uint64_t ga = rect::scatter(a, part.x1);
    for (auto b : bs) out.push_back(ga | rect::scatter(b, part.x2));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CoreTrace iterative_extraction(const LinearCode& code, const rect::Rectangle& r) {
  check_partition_for(code, r.part);
  CoreTrace trace;

  std::vector<std::uint32_t> pool1 = r.rho1;  // A0 \ union of extracted A_j
  std::vector<std::uint32_t> pool2 = r.rho2;
  std::sort(pool1.begin(), pool1.end());
  std::sort(pool2.begin(), pool2.end());

  while (true) {
    CorePair core = core_extract_code(code, r.part, pool1, pool2);
    if (core.a.empty()) break;
    pool1 = set_minus(pool1, core.a);
    pool2 = set_minus(pool2, core.b);
    CoreStep step;
    step.a = core.a;
    step.b = core.b;
    // F_i = (A_i x B-bar_i) u (A-bar_i x B_i) with the pools already reduced.
    step.f_set = product_assignments(core.a, pool2, r.part);
    auto other = product_assignments(pool1, core.b, r.part);
    step.f_set.insert(step.f_set.end(), other.begin(), other.end());
    std::sort(step.f_set.begin(), step.f_set.end());
    trace.steps.push_back(std::move(step));
  }
  trace.l = trace.steps.size();

  // Post-construction checks; these embody the trace's stated guarantees.
  std::set<std::uint64_t> seen_f;
  for (const auto& step : trace.steps) {
    for (auto x : step.f_set) {
      if (is_code_word(code, x)) trace.f_all_false_positives = false;
      if (!seen_f.insert(x).second) trace.f_pairwise_disjoint = false;
    }
  }
  std::set<std::uint64_t> covered;
  for (const auto& step : trace.steps) {
    for (auto x : product_assignments(step.a, step.b, r.part)) {
      if (!covered.insert(x).second) trace.cores_disjoint = false;
      if (!is_code_word(code, x)) trace.cores_cover_r_and_f = false;
    }
  }
  for (auto x : rect::rect_models(r)) {
    if (is_code_word(code, x) && !covered.count(x)) trace.cores_cover_r_and_f = false;
  }
  for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
    std::uint64_t cur = trace.steps[i].a.size() * trace.steps[i].b.size();
    std::uint64_t nxt = trace.steps[i + 1].a.size() * trace.steps[i + 1].b.size();
    if (nxt > cur) trace.sizes_nonincreasing = false;
  }
  return trace;
}

DiscCoreReport disc_core_bound_check(const LinearCode& code, const rect::Rectangle& r) {
  check_partition_for(code, r.part);
  DiscCoreReport rep;
  for (auto x : rect::rect_models(r)) {
    if (is_code_word(code, x)) ++rep.tp;
    else ++rep.fp;
  }
  rep.precondition_ok = rep.tp >= rep.fp;
  rep.disc = {rep.tp > rep.fp ? rep.tp - rep.fp : rep.fp - rep.tp, r.part.n};
  CorePair core = core_extract_code(code, r.part, r.rho1, r.rho2);
  rep.core_size = core.product_size();
  // Disc <= core/2^n over a common denominator is |tp - fp| <= core.
  rep.holds = rep.precondition_ok && rep.disc.numerator <= rep.core_size;
  return rep;
}

}  // namespace kclab::codes
