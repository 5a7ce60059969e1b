#include "kclab/gen.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace kclab::gen {

boolfun::TruthTable random_truth_table(unsigned n, Rng& rng) {
  boolfun::TruthTable t(n);
  for (std::uint64_t a = 0; a < t.size(); ++a) t.set(a, rng.next_bit());
  return t;
}

boolfun::TruthTable random_nonconstant_truth_table(unsigned n, Rng& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    boolfun::TruthTable t = random_truth_table(n, rng);
    std::uint64_t c = t.count_models();
    if (c != 0 && c != t.size()) return t;
  }
  throw std::logic_error("random_nonconstant_truth_table: generator stuck");
}

std::vector<unsigned> random_subset(Rng& rng, unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("subset larger than universe");
  std::vector<unsigned> pool(n);
  for (unsigned i = 0; i < n; ++i) pool[i] = i;
  std::vector<unsigned> out;
  for (unsigned i = 0; i < k; ++i) {
    std::size_t pick = static_cast<std::size_t>(rng.next_below(pool.size()));
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::sort(out.begin(), out.end());
  return out;
}

rect::Partition random_balanced_partition(unsigned n, Rng& rng) {
  std::vector<unsigned> sizes;
  for (unsigned k = 0; k <= n; ++k)
    if (3 * k >= n && 3 * k <= 2 * n) sizes.push_back(k);
  if (sizes.empty()) throw std::invalid_argument("no balanced partition for n = " + std::to_string(n));
  unsigned k = sizes[rng.next_below(sizes.size())];
  return rect::make_partition(n, random_subset(rng, n, k));
}

std::vector<std::uint32_t> random_side_set(Rng& rng, unsigned side_vars) {
  std::uint64_t space = std::uint64_t{1} << side_vars;
  for (int tries = 0; tries < 1000; ++tries) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t a = 0; a < space; ++a)
      if (rng.next_bit()) out.push_back(static_cast<std::uint32_t>(a));
    if (!out.empty()) return out;
  }
  return {0};
}

rect::Rectangle random_rectangle(unsigned n, Rng& rng) {
  rect::Partition p = random_balanced_partition(n, rng);
  auto r1 = random_side_set(rng, static_cast<unsigned>(p.x1.size()));
  auto r2 = random_side_set(rng, static_cast<unsigned>(p.x2.size()));
  return rect::make_rectangle(std::move(p), std::move(r1), std::move(r2));
}

rect::Rectangle random_block_rectangle(unsigned nx, unsigned ny, Rng& rng) {
  std::vector<unsigned> x1(nx);
  for (unsigned i = 0; i < nx; ++i) x1[i] = i;
  rect::Partition p = rect::make_partition(nx + ny, x1);
  auto r1 = random_side_set(rng, nx);
  auto r2 = random_side_set(rng, ny);
  return rect::make_rectangle(std::move(p), std::move(r1), std::move(r2));
}

rect::Rectangle random_code_heavy_rectangle(const codes::LinearCode& code, Rng& rng) {
  unsigned n = code.length();
  rect::Partition p = random_balanced_partition(n, rng);
  boolfun::TruthTable f = codes::char_function(code);

  std::set<std::uint32_t> proj1, proj2;
  for (std::uint64_t m = 0; m < f.size(); ++m) {
    if (!f.get(m)) continue;
    proj1.insert(static_cast<std::uint32_t>(rect::gather(m, p.x1)));
    proj2.insert(static_cast<std::uint32_t>(rect::gather(m, p.x2)));
  }
  auto draw_side = [&](const std::set<std::uint32_t>& proj, unsigned side_vars) {
    std::set<std::uint32_t> out;
    for (auto a : proj)
      if (rng.next_below(4) < 3) out.insert(a);  // keep ~3/4 of the projections
    // a few arbitrary extras to create false positives
    std::uint64_t space = std::uint64_t{1} << side_vars;
    for (int t = 0; t < 2; ++t)
      if (rng.next_bit()) out.insert(static_cast<std::uint32_t>(rng.next_below(space)));
    if (out.empty()) out.insert(*proj.begin());
    return std::vector<std::uint32_t>(out.begin(), out.end());
  };
  if (proj1.empty() || proj2.empty())
    throw std::logic_error("code has no models, cannot build a heavy rectangle");
  return rect::make_rectangle(p, draw_side(proj1, static_cast<unsigned>(p.x1.size())),
                              draw_side(proj2, static_cast<unsigned>(p.x2.size())));
}

}  // namespace kclab::gen
