#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <set>

#include "kclab/bilinear.hpp"
#include "kclab/gen.hpp"
#include "kclab/rng.hpp"

using namespace kclab;
using bilinear::BilinearForm;
using boolfun::TruthTable;
using num::Rational;

TEST_CASE("bilinear model count on pinned examples") {
  CHECK(bilinear::bilinear_function(BilinearForm{gf2::Matrix(3, 3)}).count_models() == 0);

  BilinearForm one{gf2::Matrix::identity(1)};
  TruthTable f1 = bilinear::bilinear_function(one);
  CHECK(f1.count_models() == 1);
  CHECK(f1.get(0b11));  // x1 = y1 = 1

  BilinearForm two{gf2::Matrix::identity(2)};
  CHECK(bilinear::bilinear_function(two).count_models() == 6);
  CHECK(bilinear::expected_bilinear_count(2, 2, 2) == 6);
}

TEST_CASE("bilinear count law over the whole 2x2 space and random 4x4") {
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    gf2::Matrix a(2, 2);
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j)
        if ((bits >> (2 * i + j)) & 1u) a.set(i, j, true);
    BilinearForm bf{a};
    CHECK(bilinear::bilinear_function(bf).count_models() ==
          bilinear::expected_bilinear_count(2, 2, gf2::rank(a)));
  }
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    BilinearForm bf{gf2::sample_matrix(4, 4, rng.next_u64())};
    CHECK(bilinear::bilinear_function(bf).count_models() ==
          bilinear::expected_bilinear_count(4, 4, gf2::rank(bf.a)));
  }
}

TEST_CASE("ajtai check degenerate and failing cases") {
  bilinear::AjtaiReport id = bilinear::ajtai_check(gf2::Matrix::identity(4), Rational(1));
  CHECK(id.holds);
  CHECK(id.delta_prime == Rational(0));
  CHECK(id.submatrix_size == 4);
  CHECK(id.checked == 1);  // the whole matrix is the only submatrix

  // delta close to 1 pushes the required rank to 1+, which the zero matrix fails
  bilinear::AjtaiReport zero = bilinear::ajtai_check(gf2::Matrix(3, 3), Rational(255, 256));
  CHECK(zero.required_rank >= 1);
  CHECK_FALSE(zero.holds);
  REQUIRE(zero.witness_rows.has_value());
  CHECK(*zero.witness_rows == std::vector<unsigned>{0, 1, 2});

  CHECK_THROWS_AS(bilinear::ajtai_check(gf2::Matrix::identity(2), Rational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(bilinear::ajtai_check(gf2::Matrix::identity(2), Rational(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("ajtai check agrees with exhaustive submatrix enumeration at n = 8") {
  Rng rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    gf2::Matrix a = gf2::sample_matrix(8, 8, rng.next_u64());
    bilinear::AjtaiReport rep = bilinear::ajtai_check(a, Rational(1, 2));
    CHECK(rep.exhaustive);
    CHECK(rep.submatrix_size == 4);
    CHECK(rep.required_rank == 1);  // ceil(8 * (1/2) / 65536)

    unsigned min_rank = 99;
    auto rows = gf2::first_subset(4);
    do {
      auto cols = gf2::first_subset(4);
      do {
        min_rank = std::min(min_rank, gf2::rank(gf2::submatrix(a, rows, cols)));
      } while (gf2::next_subset(cols, 8));
    } while (gf2::next_subset(rows, 8));
    CHECK(rep.holds == (min_rank >= rep.required_rank));
  }
}

TEST_CASE("ajtai check declares sampled mode above the budget") {
  gf2::Matrix a = gf2::sample_matrix(16, 16, 2024);
  bilinear::AjtaiReport rep = bilinear::ajtai_check(a, num::Rational(1, 2));
  CHECK_FALSE(rep.exhaustive);          // C(16,8)^2 pairs exceed the default budget
  CHECK(rep.checked == 2000);           // declared trial count
  CHECK(rep.submatrix_size == 8);
  CHECK(rep.required_rank == 1);
  CHECK(rep.holds);  // a zero 8x8 submatrix of a random 16x16 matrix would be astonishing
  // seeded: same call, same answer
  CHECK(bilinear::ajtai_check(a, num::Rational(1, 2)).holds == rep.holds);
}

TEST_CASE("conditioning to affine form on pinned examples") {
  // all-zero assignment kills the cross terms
  Rng rng(43);
  gf2::Matrix a = gf2::sample_matrix(3, 3, rng.next_u64());
  BilinearForm bf{a};
  std::vector<std::pair<unsigned, bool>> zeros{{1, false}, {2, false}, {4, false}, {5, false}};
  bilinear::AffineConditioning ac = bilinear::condition_to_affine(bf, {0}, {3}, zeros);
  CHECK(ac.u.is_zero());
  CHECK(ac.v.is_zero());
  CHECK_FALSE(ac.lambda);
  CHECK(ac.a_sub.get(0, 0) == a.get(0, 0));

  // n = 2 identity, C = {x1}, R = {y1}, a = (x2 = 1, y2 = 1): lambda absorbs x2 y2
  BilinearForm id2{gf2::Matrix::identity(2)};
  bilinear::AffineConditioning ac2 =
      bilinear::condition_to_affine(id2, {0}, {2}, {{1, true}, {3, true}});
  CHECK(ac2.lambda);
  CHECK(ac2.u.is_zero());
  CHECK(ac2.v.is_zero());
  CHECK(ac2.a_sub.get(0, 0));
  // full evaluation over the four completions
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned y = 0; y < 2; ++y)
      CHECK(bilinear::affine_eval(ac2, x, y) ==
            bilinear::eval_form(id2, x | 0b10u, y | 0b10u));
}

TEST_CASE("conditioning round-trips against the truth table oracle") {
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    unsigned n = static_cast<unsigned>(rng.next_range(2, 4));
    BilinearForm bf{gf2::sample_matrix(n, n, rng.next_u64())};
    unsigned kc = static_cast<unsigned>(rng.next_range(1, n));
    unsigned kr = static_cast<unsigned>(rng.next_range(1, n));
    std::vector<unsigned> c = gen::random_subset(rng, n, kc);
    std::vector<unsigned> r_rel = gen::random_subset(rng, n, kr);
    std::vector<unsigned> r;
    for (unsigned v : r_rel) r.push_back(v + n);
    std::vector<std::pair<unsigned, bool>> a;
    for (unsigned v = 0; v < 2 * n; ++v) {
      bool kept = (v < n) ? std::binary_search(c.begin(), c.end(), v)
                          : std::binary_search(r.begin(), r.end(), v);
      if (!kept) a.emplace_back(v, rng.next_bit());
    }
    bilinear::AffineConditioning ac = bilinear::condition_to_affine(bf, c, r, a);
    TruthTable direct = boolfun::condition(bilinear::bilinear_function(bf), a);
    CHECK(bilinear::affine_function(ac) == direct);
  }
}

TEST_CASE("bilinear extension rank behavior") {
  Rng rng(45);
  gf2::Matrix a = gf2::sample_matrix(3, 3, 77);
  bilinear::AffineConditioning plain;
  plain.a_sub = a;
  plain.u = gf2::Vector(3);
  plain.v = gf2::Vector(3);
  plain.lambda = false;
  plain.c = {0, 1, 2};
  plain.r = {3, 4, 5};
  CHECK(gf2::rank(bilinear::bilinear_extension(plain).a) == gf2::rank(a));

  bilinear::AffineConditioning bordered = plain;
  bordered.lambda = true;
  CHECK(gf2::rank(bilinear::bilinear_extension(bordered).a) == gf2::rank(a) + 1);

  for (int i = 0; i < 200; ++i) {
    unsigned k = static_cast<unsigned>(rng.next_range(1, 4));
    bilinear::AffineConditioning ac;
    ac.a_sub = gf2::sample_matrix(k, k, rng.next_u64());
    ac.u = gf2::Vector(k);
    ac.v = gf2::Vector(k);
    for (unsigned j = 0; j < k; ++j) {
      ac.u.set(j, rng.next_bit());
      ac.v.set(j, rng.next_bit());
    }
    ac.lambda = rng.next_bit();
    for (unsigned j = 0; j < k; ++j) {
      ac.c.push_back(j);
      ac.r.push_back(k + j);
    }
    BilinearForm ext = bilinear::bilinear_extension(ac);
    CHECK(gf2::rank(ext.a) >= gf2::rank(ac.a_sub));
    // conditioning the extension on e1 = 1, e2 = 1 recovers the affine form
    TruthTable ext_tab = bilinear::bilinear_function(ext);
    TruthTable back = boolfun::condition(
        ext_tab, {{0u, true}, {k + 1, true}});
    CHECK(back == bilinear::affine_function(ac));
  }
}

TEST_CASE("subrectangle selection") {
  Rng rng(46);
  // partition exactly (X, Y): valid for every delta up to the 2/3 boundary
  rect::Rectangle xy = gen::random_block_rectangle(3, 3, rng);
  bilinear::SubrectSelection sel = bilinear::subrectangle_select(xy, Rational(2, 3));
  CHECK(sel.s_x.size() == 2);
  CHECK(sel.s_y.size() == 2);
  for (unsigned v : sel.s_x) CHECK(v < 3);
  for (unsigned v : sel.s_y) CHECK(v >= 3);

  CHECK_THROWS_AS(bilinear::subrectangle_select(xy, Rational(7, 10)), std::invalid_argument);
  CHECK_THROWS_AS(bilinear::subrectangle_select(xy, Rational(0)), std::invalid_argument);
  rect::Rectangle skew = rect::make_rectangle(rect::make_partition(6, {0}), {0, 1}, {0, 5});
  CHECK_THROWS_AS(bilinear::subrectangle_select(skew, Rational(1, 2)), std::invalid_argument);

  // conditioned rectangles stay product sets on (S_X, S_Y) for every assignment
  for (int i = 0; i < 20; ++i) {
    rect::Rectangle r = gen::random_rectangle(8, rng);
    bilinear::SubrectSelection s = bilinear::subrectangle_select(r, Rational(1, 2));
    std::vector<unsigned> kept = s.s_x;
    kept.insert(kept.end(), s.s_y.begin(), s.s_y.end());
    std::sort(kept.begin(), kept.end());
    std::vector<unsigned> rest;
    for (unsigned v = 0; v < 8; ++v)
      if (!std::binary_search(kept.begin(), kept.end(), v)) rest.push_back(v);
    TruthTable rtab = rect::rect_function(r);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << rest.size()); ++bits) {
      std::vector<std::pair<unsigned, bool>> assign;
      for (std::size_t k = 0; k < rest.size(); ++k) assign.emplace_back(rest[k], (bits >> k) & 1u);
      TruthTable ra = boolfun::condition(rtab, assign);
      // product-set check over the local split (S_X first, then S_Y)
      std::set<std::uint64_t> proj1, proj2;
      std::uint64_t count = 0;
      unsigned kx = static_cast<unsigned>(s.s_x.size());
      for (std::uint64_t z = 0; z < ra.size(); ++z) {
        if (!ra.get(z)) continue;
        ++count;
        proj1.insert(z & ((std::uint64_t{1} << kx) - 1));
        proj2.insert(z >> kx);
      }
      CHECK(count == proj1.size() * proj2.size());
    }
  }
}

TEST_CASE("discrepancy bound checks on pinned examples") {
  Rng rng(47);
  // zero matrix: f constant 0, any block rectangle, rank 0 bound is 1
  BilinearForm zero{gf2::Matrix(2, 2)};
  rect::Rectangle r0 = gen::random_block_rectangle(2, 2, rng);
  bilinear::DiscBoundReport rep0 = bilinear::discrepancy_bound_checks(zero, r0);
  CHECK(rep0.rank_check_applicable);
  CHECK(rep0.rank == 0);
  CHECK(rep0.rank_check_holds);

  // 2x2 identity with the full block rectangle: disc = |6 - 10| / 16 = 1/4 <= 1/2
  BilinearForm id2{gf2::Matrix::identity(2)};
  rect::Rectangle full =
      rect::make_rectangle(rect::make_partition(4, {0, 1}), {0, 1, 2, 3}, {0, 1, 2, 3});
  bilinear::DiscBoundReport rep1 = bilinear::discrepancy_bound_checks(id2, full);
  CHECK(rep1.disc.value() == Rational(1, 4));
  CHECK(rep1.rank == 2);
  CHECK(rep1.rank_check_holds);
  CHECK(rep1.averaging_applicable);
  CHECK(rep1.averaging_max_holds);
  CHECK(rep1.averaging_avg_holds);
  CHECK(rep1.bridge_checked > 0);
  CHECK(rep1.bridge_equal);
}

TEST_CASE("discrepancy bounds hold on random instances") {
  Rng rng(48);
  for (int i = 0; i < 40; ++i) {
    unsigned n = static_cast<unsigned>(rng.next_range(2, 4));
    BilinearForm bf{gf2::sample_matrix(n, n, rng.next_u64())};
    rect::Rectangle r = gen::random_block_rectangle(n, n, rng);
    bilinear::DiscBoundReport rep = bilinear::discrepancy_bound_checks(bf, r);
    CHECK(rep.rank_check_applicable);
    CHECK(rep.rank_check_holds);
    if (rep.averaging_applicable) {
      CHECK(rep.averaging_max_holds);
      CHECK(rep.averaging_avg_holds);
      CHECK(rep.bridge_equal);
    }
  }
}
