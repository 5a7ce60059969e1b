#include <doctest.h>

#include <stdexcept>

#include "kclab/codes.hpp"
#include "kclab/gen.hpp"
#include "kclab/rect.hpp"
#include "kclab/rng.hpp"

using namespace kclab;
using boolfun::TruthTable;
using num::Rational;

TEST_CASE("balance is an exact rational comparison") {
  CHECK(rect::is_balanced(rect::make_partition(3, {0})));
  CHECK_FALSE(rect::is_balanced(rect::make_partition(3, {})));
  CHECK(rect::is_balanced(rect::make_partition(4, {0, 2})));
  CHECK_FALSE(rect::is_balanced(rect::make_partition(4, {3})));
  CHECK(rect::is_balanced(rect::make_partition(6, {0, 1})));
  CHECK_FALSE(rect::is_balanced(rect::make_partition(6, {0})));
}

TEST_CASE("rectangle function, tp/fp and discrepancy on pinned examples") {
  rect::Partition p = rect::make_partition(2, {0});

  rect::Rectangle empty = rect::make_rectangle(p, {}, {0, 1});
  TruthTable f1 = TruthTable::constant(2, true);
  auto c0 = rect::tp_fp(f1, empty);
  CHECK(c0.tp == 0);
  CHECK(c0.fp == 0);
  CHECK(rect::discrepancy(f1, empty).numerator == 0);

  rect::Rectangle full = rect::make_rectangle(p, {0, 1}, {0, 1});
  auto c1 = rect::tp_fp(f1, full);
  CHECK(c1.tp == 4);
  CHECK(c1.fp == 0);
  CHECK(rect::discrepancy(f1, full).value() == Rational(1));

  TruthTable diag = TruthTable::from_models(2, {0b00, 0b11});
  auto c2 = rect::tp_fp(diag, full);
  CHECK(c2.tp == 2);
  CHECK(c2.fp == 2);
  CHECK(rect::discrepancy(diag, full).value() == Rational(0));
}

TEST_CASE("rectangle model count is the product of the side sizes") {
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    rect::Rectangle r = gen::random_rectangle(6, rng);
    CHECK(rect::rect_function(r).count_models() == r.model_count());
    CHECK(rect::rect_models(r).size() == r.model_count());
  }
}

TEST_CASE("full-term DNF cover verifies as disjoint and balanced") {
  Rng rng(22);
  for (int i = 0; i < 20; ++i) {
    TruthTable f = gen::random_truth_table(5, rng);
    rect::Cover c = rect::full_term_cover(f);
    CHECK(c.size() == f.count_models());
    rect::CoverReport rep = rect::verify_cover(f, c);
    CHECK(rep.ok);
    CHECK(rep.equivalent);
    CHECK(rep.disjoint);
    CHECK(rep.balanced);
  }
}

TEST_CASE("verify_cover reports witnesses") {
  TruthTable f = TruthTable::from_models(4, {3, 5, 12});
  rect::Cover c = rect::full_term_cover(f);

  rect::Cover dup = c;
  dup.rectangles.push_back(dup.rectangles.front());
  rect::CoverReport rep = rect::verify_cover(f, dup);
  CHECK(rep.equivalent);
  CHECK_FALSE(rep.disjoint);
  CHECK(rep.overlap_pair.has_value());
  CHECK(rep.overlap_witness.has_value());
  CHECK(f.get(*rep.overlap_witness));

  rect::Cover missing = c;
  missing.rectangles.pop_back();
  rect::CoverReport rep2 = rect::verify_cover(f, missing);
  CHECK_FALSE(rep2.equivalent);
  CHECK(rep2.equivalence_witness.has_value());
  CHECK(f.get(*rep2.equivalence_witness));
  CHECK_FALSE(rep2.ok);
}

TEST_CASE("covers may mix partitions; disjointness compares full model sets") {
  // f on 4 variables covered by two rectangles over different partitions
  TruthTable f = TruthTable::from_models(4, {0b0011, 0b1100});
  rect::Rectangle r1 =
      rect::make_rectangle(rect::make_partition(4, {0, 1}), {0b11}, {0b00});
  rect::Rectangle r2 =
      rect::make_rectangle(rect::make_partition(4, {1, 2}), {0b10}, {0b10});  // x3=1,x2=0,x1=0,x4=1
  rect::Cover c;
  c.rectangles = {r1, r2};
  rect::CoverReport rep = rect::verify_cover(f, c);
  CHECK(rep.equivalent);
  CHECK(rep.disjoint);
  CHECK(rep.balanced);
  CHECK(rep.ok);
}

TEST_CASE("cover-size bound calculators reproduce hand-plugged values") {
  // weak: (M - eps 2^n) / Delta
  CHECK(rect::weak_cover_bound(16, 5, Rational(1, 2), 3) == Rational(0));
  CHECK(rect::weak_cover_bound(10, 4, Rational(0), 1) == Rational(10));
  CHECK(rect::weak_cover_bound(16, 8, Rational(1, 32), 4) == Rational(2));
  CHECK_THROWS_AS(rect::weak_cover_bound(16, 8, Rational(1, 32), 0), std::invalid_argument);

  // strong: (1 - eps) M / Delta
  CHECK(rect::strong_cover_bound(16, Rational(1), 4) == Rational(0));
  CHECK(rect::strong_cover_bound(16, Rational(0), 16) == Rational(1));
  CHECK(rect::strong_cover_pipeline(16, 8, 4, Rational(1, 2)) == Rational(2));
  // pipeline equals the strong bound with Delta = 2^(n - 2(m-1))
  CHECK(rect::strong_cover_pipeline(16, 8, 4, Rational(1, 2)) ==
        rect::strong_cover_bound(16, Rational(1, 2), 1u << (8 - 2 * 3)));
}

TEST_CASE("bound calculators are monotone") {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    unsigned n = 8;
    std::uint64_t m1 = rng.next_below(200), m2 = m1 + rng.next_below(50);
    Rational e1(static_cast<std::int64_t>(rng.next_below(10)), 16);
    Rational e2 = e1 + Rational(static_cast<std::int64_t>(rng.next_below(6)), 16);
    std::uint64_t d1 = 1 + rng.next_below(8), d2 = d1 + rng.next_below(8);
    auto clamp0 = [](const Rational& r) { return r.sign() < 0 ? Rational(0) : r; };
    CHECK(rect::weak_cover_bound(m1, n, e1, d1) <= rect::weak_cover_bound(m2, n, e1, d1));
    CHECK(rect::weak_cover_bound(m1, n, e2, d1) <= rect::weak_cover_bound(m1, n, e1, d1));
    CHECK(clamp0(rect::weak_cover_bound(m1, n, e1, d2)) <=
          clamp0(rect::weak_cover_bound(m1, n, e1, d1)));
    CHECK(rect::strong_cover_bound(m1, e1, d1) <= rect::strong_cover_bound(m2, e1, d1));
    CHECK(rect::strong_cover_bound(m1, e2, d1) <= rect::strong_cover_bound(m1, e1, d1));
    CHECK(rect::strong_cover_bound(m1, e1, d2) <= rect::strong_cover_bound(m1, e1, d1));
  }
}

TEST_CASE("signed tp-fp identity over disjoint covers") {
  // |f^-1(1)| - sum_k (tp_k - fp_k) = |f^-1(1) ^ g^-1(0)| + |f^-1(0) ^ g^-1(1)|
  Rng rng(24);
  for (int i = 0; i < 30; ++i) {
    TruthTable f = gen::random_truth_table(5, rng);
    TruthTable g = gen::random_truth_table(5, rng);
    rect::Cover cover = rect::full_term_cover(g);
    std::int64_t signed_sum = 0;
    for (const auto& r : cover.rectangles) {
      auto c = rect::tp_fp(f, r);
      signed_sum += static_cast<std::int64_t>(c.tp) - static_cast<std::int64_t>(c.fp);
    }
    std::int64_t lhs = static_cast<std::int64_t>(f.count_models()) - signed_sum;
    std::uint64_t disagree = boolfun::combine_xor(f, g).count_models();
    CHECK(lhs == static_cast<std::int64_t>(disagree));
  }
}

TEST_CASE("maximal code rectangle bound on pinned examples") {
  rect::MaxRectReport zero = rect::max_code_rectangle_check(gf2::Matrix(2, 4), 0);
  CHECK(zero.bound == 16);
  CHECK(zero.all_hold);

  gf2::Matrix h = gf2::Matrix::from_rows({"101", "011"});
  CHECK(gf2::goodness(h).s_max == 1);
  rect::MaxRectReport rep = rect::max_code_rectangle_check(h, 1);
  CHECK(rep.partitions.size() == 6);  // all balanced X1 choices at n = 3
  CHECK(rep.bound == 2);
  CHECK(rep.all_hold);
  for (const auto& pr : rep.partitions) CHECK(pr.max_rect_models <= 2);

  CHECK_THROWS_AS(rect::max_code_rectangle_check(gf2::Matrix(2, 14), 1), std::invalid_argument);
}

TEST_CASE("coset-structure maximum agrees with the brute-force oracle") {
  Rng rng(25);
  for (int i = 0; i < 15; ++i) {
    unsigned n = static_cast<unsigned>(rng.next_range(3, 6));
    unsigned m = static_cast<unsigned>(rng.next_range(1, 3));
    codes::LinearCode code{gf2::sample_matrix(m, n, rng.next_u64())};
    TruthTable f = codes::char_function(code);
    rect::MaxRectReport rep = rect::max_code_rectangle_check(code.h, 0);
    for (const auto& pr : rep.partitions) {
      rect::Partition part = rect::make_partition(n, pr.x1);
      std::vector<std::uint32_t> all1, all2;
      for (std::uint32_t a = 0; a < (1u << part.x1.size()); ++a) all1.push_back(a);
      for (std::uint32_t b = 0; b < (1u << part.x2.size()); ++b) all2.push_back(b);
      codes::CorePair best = codes::core_extract_bruteforce(f, part, all1, all2);
      CHECK(best.product_size() == pr.max_rect_models);
    }
  }
}

TEST_CASE("prune_cover") {
  Rng rng(26);
  TruthTable f = gen::random_nonconstant_truth_table(4, rng);
  rect::Cover c = rect::full_term_cover(f);
  CHECK(rect::prune_cover(f, c).size() == c.size());  // cover of f itself: nothing to prune

  // add one rectangle consisting solely of false positives
  TruthTable notf = boolfun::combine_not(f);
  std::uint64_t bad = notf.models().front();
  rect::Partition p = c.rectangles.front().part;
  rect::Cover noisy = c;
  noisy.rectangles.push_back(rect::make_rectangle(
      p, {static_cast<std::uint32_t>(rect::gather(bad, p.x1))},
      {static_cast<std::uint32_t>(rect::gather(bad, p.x2))}));
  // noisy is still disjoint: the new rectangle covers a single non-model
  rect::Cover pruned = rect::prune_cover(f, noisy);
  CHECK(pruned.size() == c.size());

  auto disagreement = [&](const rect::Cover& cov) {
    TruthTable acc = TruthTable::constant(4, false);
    for (const auto& r : cov.rectangles) acc = boolfun::combine_or(acc, rect::rect_function(r));
    return boolfun::combine_xor(acc, f).count_models();
  };
  CHECK(disagreement(pruned) < disagreement(noisy));

  // idempotence
  rect::Cover again = rect::prune_cover(f, pruned);
  CHECK(again.size() == pruned.size());
}
