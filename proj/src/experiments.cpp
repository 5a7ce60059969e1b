#include "kclab/experiments.hpp"

#include <ctime>

#include "kclab/bilinear.hpp"
#include "kclab/boolfun.hpp"
#include "kclab/codes.hpp"
#include "kclab/gen.hpp"
#include "kclab/gf2.hpp"
#include "kclab/nnf.hpp"
#include "kclab/rect.hpp"
#include "kclab/rng.hpp"
#include "kclab/serialize.hpp"

namespace kclab::exp {

json Report::to_json(bool with_timestamp) const {
  json checks_json = json::array();
  for (const auto& c : checks)
    checks_json.push_back(json{
        {"name", c.name}, {"holds", c.holds}, {"failures", c.failures}, {"total", c.total}});
  json j{{"schema_version", schema_version},
         {"suite", suite},
         {"config", config},
         {"aggregates", aggregates},
         {"items", items},
         {"checks", checks_json},
         {"all_hold", all_hold()}};
  if (with_timestamp) j["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
  return j;
}

std::string Report::to_csv() const {
  // Timestamp excluded so that equal configs give byte-identical files.
  return ser::json_to_csv(to_json(false));
}

namespace {

void keep_item(Report& rep, const CommonOpts& opts, json item) {
  if (rep.items.size() < opts.max_items) rep.items.push_back(std::move(item));
}

}  // namespace

Report suite_good_matrices(unsigned m, unsigned n, unsigned s, const CommonOpts& opts) {
  Report rep;
  rep.suite = "good-matrices";
  rep.config = json{{"m", m}, {"n", n}, {"s", s}, {"trials", opts.trials},
                    {"seed", opts.seed}, {"jobs", opts.jobs}};
  rep.items = json::array();
  auto mc = gf2::monte_carlo_goodness(m, n, s, opts.trials, opts.seed, opts.jobs);
  rep.aggregates = json{{"rate", ser::rational_json(mc.rate)},
                        {"good", mc.good},
                        {"trials", mc.trials}};
  // Exhaustive baseline when the whole matrix space is small.
  if (static_cast<std::uint64_t>(m) * n <= 20) {
    std::uint64_t total = std::uint64_t{1} << (m * n), good = 0;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
      gf2::Matrix h(m, n);
      for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < n; ++j)
          if ((bits >> (i * n + j)) & 1u) h.set(i, j, true);
      if (gf2::is_good(h, s)) ++good;
    }
    rep.aggregates["exhaustive_fraction"] =
        ser::rational_json(num::Rational(num::BigInt::from_uint64(good),
                                         num::BigInt::from_uint64(total)));
  }
  return rep;
}

Report suite_max_rectangle(unsigned n_max, unsigned m_max, const CommonOpts& opts) {
  Report rep;
  rep.suite = "max-rectangle";
  rep.config = json{{"n_max", n_max}, {"m_max", m_max}, {"trials", opts.trials}, {"seed", opts.seed}};
  rep.items = json::array();
  Check check{"largest rectangle entailed by the code <= 2^(n-2s) on every balanced partition",
              true, 0, opts.trials};
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    Rng rng(derive_seed(opts.seed, t));
    unsigned n = static_cast<unsigned>(rng.next_range(4, n_max));
    unsigned m = static_cast<unsigned>(rng.next_range(1, m_max));
    gf2::Matrix h = gf2::sample_matrix(m, n, rng.next_u64());
    unsigned s = gf2::goodness(h).s_max;
    rect::MaxRectReport mr = rect::max_code_rectangle_check(h, s);
    if (!mr.all_hold) {
      check.holds = false;
      ++check.failures;
    }
    keep_item(rep, opts, json{{"trial", t}, {"n", n}, {"m", m}, {"s", s}, {"all_hold", mr.all_hold}});
  }
  rep.checks.push_back(check);
  return rep;
}

Report suite_core_claims(unsigned n_max, const CommonOpts& opts) {
  Report rep;
  rep.suite = "core-claims";
  rep.config = json{{"n_max", n_max}, {"trials", opts.trials}, {"seed", opts.seed}};
  rep.items = json::array();
  Check check{
      "iterative trace: F_i are false positives, pairwise disjoint; cores disjointly cover "
      "models of r and f; |A_i||B_i| non-increasing",
      true, 0, opts.trials};
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    Rng rng(derive_seed(opts.seed, t));
    unsigned n = static_cast<unsigned>(rng.next_range(4, n_max));
    unsigned m = static_cast<unsigned>(rng.next_range(1, 3));
    codes::LinearCode code{gf2::sample_matrix(m, n, rng.next_u64())};
    rect::Rectangle r = gen::random_rectangle(n, rng);
    codes::CoreTrace trace = codes::iterative_extraction(code, r);
    if (!trace.all_checks()) {
      check.holds = false;
      ++check.failures;
    }
    keep_item(rep, opts,
              json{{"trial", t}, {"n", n}, {"m", m}, {"l", trace.l}, {"ok", trace.all_checks()}});
  }
  rep.checks.push_back(check);
  return rep;
}

Report suite_disc_core(unsigned n_max, const CommonOpts& opts) {
  Report rep;
  rep.suite = "disc-core";
  rep.config = json{{"n_max", n_max}, {"trials", opts.trials}, {"seed", opts.seed}};
  rep.items = json::array();
  Check check{"Disc(f,r) <= |core| / 2^n whenever tp >= fp", true, 0, opts.trials};
  std::uint64_t attempts = 0;
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    codes::DiscCoreReport dc;
    // Rejection-sample until the tp >= fp precondition holds.
    for (std::uint64_t round = 0;; ++round) {
      Rng rng(derive_seed(opts.seed, t * 1000003ull + round));
      ++attempts;
      unsigned n = static_cast<unsigned>(rng.next_range(4, n_max));
      unsigned m = static_cast<unsigned>(rng.next_range(1, 3));
      codes::LinearCode code{gf2::sample_matrix(m, n, rng.next_u64())};
      rect::Rectangle r = gen::random_code_heavy_rectangle(code, rng);
      dc = codes::disc_core_bound_check(code, r);
      if (dc.precondition_ok) break;
      if (round > 200) throw std::logic_error("disc-core generator stuck");
    }
    if (!dc.holds) {
      check.holds = false;
      ++check.failures;
    }
    keep_item(rep, opts,
              json{{"trial", t}, {"tp", dc.tp}, {"fp", dc.fp}, {"core_size", dc.core_size},
                   {"holds", dc.holds}});
  }
  rep.aggregates = json{{"attempts", attempts}};
  rep.checks.push_back(check);
  return rep;
}

Report suite_bilinear_count(unsigned n, const CommonOpts& opts) {
  Report rep;
  rep.suite = "bilinear-count";
  rep.config = json{{"n", n}, {"trials", opts.trials}, {"seed", opts.seed}};
  rep.items = json::array();
  Check check{"model count == 2^(2n-1)(1 - 2^(-rk(A)))", true, 0, opts.trials};
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    bilinear::BilinearForm bf{gf2::sample_matrix(n, n, derive_seed(opts.seed, t))};
    unsigned rk = gf2::rank(bf.a);
    std::uint64_t counted = bilinear::bilinear_function(bf).count_models();
    std::uint64_t expected = bilinear::expected_bilinear_count(n, n, rk);
    if (counted != expected) {
      check.holds = false;
      ++check.failures;
    }
    keep_item(rep, opts,
              json{{"trial", t}, {"rank", rk}, {"count", counted}, {"expected", expected}});
  }
  rep.checks.push_back(check);
  return rep;
}

Report suite_bilinear_disc(unsigned n, const CommonOpts& opts) {
  Report rep;
  rep.suite = "bilinear-disc";
  rep.config = json{{"n", n}, {"trials", opts.trials}, {"seed", opts.seed}};
  rep.items = json::array();
  Check check{"Disc(f,r) <= 2^(-rk(A)/2) for rectangles on the (X,Y) partition", true, 0,
              opts.trials};
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    Rng rng(derive_seed(opts.seed, t));
    bilinear::BilinearForm bf{gf2::sample_matrix(n, n, rng.next_u64())};
    rect::Rectangle r = gen::random_block_rectangle(n, n, rng);
    bilinear::DiscBoundReport db = bilinear::discrepancy_bound_checks(bf, r);
    if (!db.rank_check_applicable || !db.rank_check_holds) {
      check.holds = false;
      ++check.failures;
    }
    keep_item(rep, opts,
              json{{"trial", t}, {"rank", db.rank}, {"disc", ser::rational_json(db.disc.value())},
                   {"holds", db.rank_check_holds}});
  }
  rep.checks.push_back(check);
  return rep;
}

Report suite_cover_theorem(unsigned n_min, unsigned n_max, const CommonOpts& opts) {
  Report rep;
  rep.suite = "cover-theorem";
  rep.config = json{{"n_min", n_min}, {"n_max", n_max}, {"trials", opts.trials}, {"seed", opts.seed}};
  rep.items = json::array();
  Check check{"extract_cover is equivalent, disjoint, balanced, with K <= circuit size", true, 0,
              opts.trials};
  for (std::uint64_t t = 0; t < opts.trials; ++t) {
    Rng rng(derive_seed(opts.seed, t));
    unsigned n = static_cast<unsigned>(rng.next_range(n_min, n_max));
    boolfun::TruthTable f = gen::random_nonconstant_truth_table(n, rng);
    nnf::Circuit circ = nnf::from_truth_table(f);
    rect::Cover cover = nnf::extract_cover(circ);
    rect::CoverReport cr = rect::verify_cover(f, cover, true, true);
    bool ok = cr.ok && cover.size() <= circ.size();
    if (!ok) {
      check.holds = false;
      ++check.failures;
    }
    keep_item(rep, opts,
              json{{"trial", t}, {"n", n}, {"K", cover.size()}, {"gates", circ.size()}, {"ok", ok}});
  }
  rep.checks.push_back(check);
  return rep;
}

}  // namespace kclab::exp
