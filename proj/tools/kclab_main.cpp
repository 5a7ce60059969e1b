#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kclab/bilinear.hpp"
#include "kclab/boolfun.hpp"
#include "kclab/codes.hpp"
#include "kclab/experiments.hpp"
#include "kclab/gf2.hpp"
#include "kclab/nnf.hpp"
#include "kclab/rect.hpp"
#include "kclab/serialize.hpp"

using namespace kclab;
using ser::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

std::string render_rational(const num::Rational& r) {
  return r.to_string() + " (" + r.to_decimal() + ")";
}

int emit_report(const exp::Report& rep, const std::string& format, const std::string& out) {
  if (format == "csv") write_out(out, rep.to_csv());
  else write_out(out, rep.to_json().dump(2) + "\n");
  for (const auto& c : rep.checks)
    std::cerr << (c.holds ? "PASS " : "FAIL ") << c.name << " (" << c.failures << "/" << c.total
              << " failures)\n";
  return rep.all_hold() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("KCLAB_CAP")) {
    boolfun::set_truth_table_cap(static_cast<unsigned>(std::strtoul(cap, nullptr, 10)));
  }

  CLI::App app{"kclab: d-DNNF, rectangle-cover and linear-code laboratory"};
  app.require_subcommand(1);

  // ---- gen-matrix ----
  auto* gen_matrix = app.add_subcommand("gen-matrix", "sample a random binary matrix");
  unsigned gm_m = 2, gm_n = 4;
  std::uint64_t gm_seed = 1;
  std::string gm_out;
  gen_matrix->add_option("--m", gm_m, "rows")->required();
  gen_matrix->add_option("--n", gm_n, "columns")->required();
  gen_matrix->add_option("--seed", gm_seed, "seed")->required();
  gen_matrix->add_option("-o,--out", gm_out, "output path (default stdout)");

  // ---- goodness ----
  auto* goodness_cmd = app.add_subcommand("goodness", "column-subset rank profile of a matrix");
  std::string gd_matrix;
  unsigned gd_threshold = 0, gd_cap = gf2::kDefaultGoodnessCap;
  bool gd_json = false;
  std::uint64_t gd_mc_trials = 0, gd_mc_seed = 1;
  unsigned gd_mc_s = 0;
  int gd_jobs = 0;
  goodness_cmd->add_option("--matrix", gd_matrix, "matrix file")->required();
  goodness_cmd->add_option("--threshold", gd_threshold, "columns per subset (default ceil(n/3))");
  goodness_cmd->add_option("--cap", gd_cap, "exhaustive cap on n");
  goodness_cmd->add_flag("--json", gd_json, "JSON output");
  goodness_cmd->add_option("--monte-carlo-trials", gd_mc_trials,
                           "estimate the s-good rate of random matrices of the same shape");
  goodness_cmd->add_option("--s", gd_mc_s, "s for the monte carlo mode");
  goodness_cmd->add_option("--mc-seed", gd_mc_seed, "monte carlo seed");
  goodness_cmd->add_option("--jobs", gd_jobs, "parallel jobs (0 = all cores)");

  // ---- gen-code ----
  auto* gen_code = app.add_subcommand("gen-code", "sample a parity check matrix and its code");
  unsigned gc_m = 2, gc_n = 4;
  std::uint64_t gc_seed = 1;
  std::string gc_matrix_out, gc_out;
  gen_code->add_option("--m", gc_m, "rows")->required();
  gen_code->add_option("--n", gc_n, "code length")->required();
  gen_code->add_option("--seed", gc_seed, "seed")->required();
  gen_code->add_option("--matrix-out", gc_matrix_out, "write H here");
  gen_code->add_option("-o,--out", gc_out, "write the characteristic truth table here");

  // ---- gen-bilinear ----
  auto* gen_bi = app.add_subcommand("gen-bilinear", "sample a bilinear form");
  unsigned gb_n = 3;
  std::uint64_t gb_seed = 1;
  std::string gb_matrix_out, gb_out;
  gen_bi->add_option("--n", gb_n, "matrix side")->required();
  gen_bi->add_option("--seed", gb_seed, "seed")->required();
  gen_bi->add_option("--matrix-out", gb_matrix_out, "write A here");
  gen_bi->add_option("-o,--out", gb_out, "write the truth table on 2n variables here");

  // ---- count ----
  auto* count_cmd = app.add_subcommand("count", "model count of a table or circuit");
  std::string ct_table, ct_circuit;
  count_cmd->add_option("--table", ct_table, "truth table file");
  count_cmd->add_option("--circuit", ct_circuit, "nnf circuit file");

  // ---- validate ----
  auto* validate_cmd = app.add_subcommand("validate", "structural d-DNNF validation");
  std::string vd_circuit;
  bool vd_json = false;
  validate_cmd->add_option("--circuit", vd_circuit, "nnf circuit file")->required();
  validate_cmd->add_flag("--json", vd_json, "JSON output");

  // ---- approx ----
  auto* approx_cmd = app.add_subcommand("approx", "weak/strong approximation error of g against f");
  std::string ap_f, ap_g, ap_mode = "both";
  approx_cmd->add_option("--f", ap_f, "target truth table")->required();
  approx_cmd->add_option("--g", ap_g, "approximation truth table")->required();
  approx_cmd->add_option("--mode", ap_mode, "weak | strong | both")
      ->check(CLI::IsMember({"weak", "strong", "both"}));

  // ---- disc ----
  auto* disc_cmd = app.add_subcommand("disc", "discrepancy of a rectangle against a function");
  std::string dc_f, dc_rect;
  disc_cmd->add_option("--f", dc_f, "truth table file")->required();
  disc_cmd->add_option("--rect", dc_rect, "rectangle JSON file")->required();

  // ---- core-trace ----
  auto* trace_cmd = app.add_subcommand("core-trace", "iterative core extraction trace");
  std::string tr_matrix, tr_rect, tr_out;
  trace_cmd->add_option("--matrix", tr_matrix, "parity check matrix file")->required();
  trace_cmd->add_option("--rect", tr_rect, "rectangle JSON file")->required();
  trace_cmd->add_option("-o,--out", tr_out, "output path (default stdout)");

  // ---- cover-extract ----
  auto* cex_cmd = app.add_subcommand("cover-extract", "rectangle cover of a d-DNNF");
  std::string cx_circuit, cx_out;
  cex_cmd->add_option("--circuit", cx_circuit, "nnf circuit file")->required();
  cex_cmd->add_option("-o,--out", cx_out, "output path (default stdout)");

  // ---- cover-verify ----
  auto* cvf_cmd = app.add_subcommand("cover-verify", "verify a cover against a function");
  std::string cv_f, cv_cover;
  bool cv_no_disjoint = false, cv_no_balanced = false;
  cvf_cmd->add_option("--f", cv_f, "truth table file")->required();
  cvf_cmd->add_option("--cover", cv_cover, "cover JSON file")->required();
  cvf_cmd->add_flag("--no-require-disjoint", cv_no_disjoint, "drop the disjointness requirement");
  cvf_cmd->add_flag("--no-require-balanced", cv_no_balanced, "drop the balance requirement");

  // ---- bound ----
  auto* bound_cmd = app.add_subcommand("bound", "cover-size lower bound calculators");
  std::string bd_mode, bd_eps = "0";
  std::uint64_t bd_count = 0, bd_delta = 1;
  unsigned bd_n = 0, bd_m = 0;
  bound_cmd->add_option("--mode", bd_mode, "weak | strong | pipeline")
      ->required()
      ->check(CLI::IsMember({"weak", "strong", "pipeline"}));
  bound_cmd->add_option("--model-count", bd_count, "|f^-1(1)|")->required();
  bound_cmd->add_option("--eps", bd_eps, "epsilon as p/q");
  bound_cmd->add_option("--Delta", bd_delta, "discrepancy numerator bound");
  bound_cmd->add_option("--n", bd_n, "variable count");
  bound_cmd->add_option("--m", bd_m, "parity check rows (pipeline mode)");

  // ---- experiment ----
  auto* exp_cmd = app.add_subcommand("experiment", "randomized verification suites");
  exp_cmd->require_subcommand(1);
  exp::CommonOpts opts;
  std::string ex_format = "json", ex_out;
  unsigned ex_n = 3, ex_n_min = 6, ex_n_max = 8, ex_m = 2, ex_s = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--trials", opts.trials, "trial count");
    sub->add_option("--seed", opts.seed, "seed");
    sub->add_option("--jobs", opts.jobs, "parallel jobs (0 = all cores)");
    sub->add_option("--format", ex_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("-o,--out", ex_out, "report path (default stdout)");
  };
  auto* ex_good = exp_cmd->add_subcommand("good-matrices", "s-good rate of random matrices");
  ex_good->add_option("--m", ex_m, "rows");
  ex_good->add_option("--n", ex_n, "columns");
  ex_good->add_option("--s", ex_s, "target s");
  add_common(ex_good);
  auto* ex_maxrect = exp_cmd->add_subcommand("max-rectangle", "entailed-rectangle size bound");
  ex_maxrect->add_option("--n-max", ex_n_max, "max code length");
  ex_maxrect->add_option("--m-max", ex_m, "max parity rows");
  add_common(ex_maxrect);
  auto* ex_claims = exp_cmd->add_subcommand("core-claims", "iterative extraction trace checks");
  ex_claims->add_option("--n-max", ex_n_max, "max code length");
  add_common(ex_claims);
  auto* ex_disccore = exp_cmd->add_subcommand("disc-core", "discrepancy vs core inequality");
  ex_disccore->add_option("--n-max", ex_n_max, "max code length");
  add_common(ex_disccore);
  auto* ex_bicount = exp_cmd->add_subcommand("bilinear-count", "bilinear model count law");
  ex_bicount->add_option("--n", ex_n, "matrix side");
  add_common(ex_bicount);
  auto* ex_bidisc = exp_cmd->add_subcommand("bilinear-disc", "bilinear discrepancy bound");
  ex_bidisc->add_option("--n", ex_n, "matrix side");
  add_common(ex_bidisc);
  auto* ex_cover = exp_cmd->add_subcommand("cover-theorem", "cover extraction checks");
  ex_cover->add_option("--n-min", ex_n_min, "min variables");
  ex_cover->add_option("--n-max", ex_n_max, "max variables");
  add_common(ex_cover);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_matrix) {
      write_out(gm_out, gf2::sample_matrix(gm_m, gm_n, gm_seed).to_text());
      return kExitOk;
    }

    if (*goodness_cmd) {
      gf2::Matrix h = gf2::Matrix::parse_text(slurp(gd_matrix));
      if (gd_mc_trials > 0) {
        auto mc = gf2::monte_carlo_goodness(h.rows(), h.cols(), gd_mc_s, gd_mc_trials, gd_mc_seed,
                                            gd_jobs, gd_threshold);
        std::cout << "rate = " << render_rational(mc.rate) << " (" << mc.good << "/" << mc.trials
                  << " s-good)\n";
        return kExitOk;
      }
      gf2::GoodnessReport rep = gf2::goodness(h, gd_cap, gd_threshold);
      if (gd_json) {
        std::cout << ser::goodness_json(rep).dump(2) << "\n";
      } else {
        std::cout << "s_max = " << rep.s_max << "\nthreshold = " << rep.subset_threshold
                  << " columns\nwitness =";
        for (unsigned c : rep.witness_subset) std::cout << " " << c;
        std::cout << "\n";
      }
      return kExitOk;
    }

    if (*gen_code) {
      gf2::Matrix h = gf2::sample_matrix(gc_m, gc_n, gc_seed);
      if (!gc_matrix_out.empty()) write_out(gc_matrix_out, h.to_text());
      codes::LinearCode code{h};
      std::string table = codes::char_function(code).to_text();
      if (!gc_out.empty()) write_out(gc_out, table);
      if (gc_matrix_out.empty() && gc_out.empty()) std::cout << table;
      return kExitOk;
    }

    if (*gen_bi) {
      gf2::Matrix a = gf2::sample_matrix(gb_n, gb_n, gb_seed);
      if (!gb_matrix_out.empty()) write_out(gb_matrix_out, a.to_text());
      std::string table = bilinear::bilinear_function(bilinear::BilinearForm{a}).to_text();
      if (!gb_out.empty()) write_out(gb_out, table);
      if (gb_matrix_out.empty() && gb_out.empty()) std::cout << table;
      return kExitOk;
    }

    if (*count_cmd) {
      if (ct_table.empty() == ct_circuit.empty())
        throw std::runtime_error("count needs exactly one of --table, --circuit");
      if (!ct_table.empty()) {
        std::cout << boolfun::TruthTable::parse_text(slurp(ct_table)).count_models() << "\n";
      } else {
        nnf::Circuit c = nnf::parse(slurp(ct_circuit));
        nnf::ValidationReport rep = nnf::validate(c);
        if (!rep.is_d_dnnf())
          throw std::runtime_error("circuit is not a validated d-DNNF; run `kclab validate`");
        std::cout << nnf::model_count(c, rep).to_decimal() << "\n";
      }
      return kExitOk;
    }

    if (*validate_cmd) {
      nnf::Circuit c = nnf::parse(slurp(vd_circuit));
      nnf::ValidationReport rep = nnf::validate(c);
      if (vd_json) std::cout << ser::validation_json(rep).dump(2) << "\n";
      else {
        std::cout << "nnf: " << (rep.is_nnf ? "yes" : "no") << "\ndecomposable: "
                  << (rep.decomposable ? "yes" : "no") << "\ndeterministic: "
                  << (rep.deterministic ? (*rep.deterministic ? "yes" : "no") : "unchecked")
                  << "\nd-DNNF: " << (rep.is_d_dnnf() ? "yes" : "no") << "\n";
        if (rep.decomposability_witness)
          std::cout << "decomposability witness gate: " << *rep.decomposability_witness << "\n";
        if (rep.determinism_witness_gate)
          std::cout << "determinism witness gate: " << *rep.determinism_witness_gate
                    << " shared model: " << *rep.determinism_witness_model << "\n";
      }
      return rep.is_d_dnnf() ? kExitOk : kExitCheckFailed;
    }

    if (*approx_cmd) {
      boolfun::TruthTable f = boolfun::TruthTable::parse_text(slurp(ap_f));
      boolfun::TruthTable g = boolfun::TruthTable::parse_text(slurp(ap_g));
      auto rep = boolfun::approx_report(f, g, boolfun::Distribution::uniform());
      if (ap_mode == "weak" || ap_mode == "both")
        std::cout << "weak_eps = " << render_rational(rep.weak) << "\n";
      if (ap_mode == "strong" || ap_mode == "both") {
        if (!rep.strong) throw std::runtime_error("strong approximation undefined for unsatisfiable f");
        std::cout << "strong_eps = " << render_rational(*rep.strong) << "\n";
      }
      return kExitOk;
    }

    if (*disc_cmd) {
      boolfun::TruthTable f = boolfun::TruthTable::parse_text(slurp(dc_f));
      rect::Rectangle r = ser::rectangle_from_json(load_json(dc_rect));
      auto c = rect::tp_fp(f, r);
      rect::DiscValue d = rect::discrepancy(f, r);
      std::cout << "tp = " << c.tp << "\nfp = " << c.fp
                << "\ndisc = " << render_rational(d.value()) << "\n";
      return kExitOk;
    }

    if (*trace_cmd) {
      codes::LinearCode code{gf2::Matrix::parse_text(slurp(tr_matrix))};
      rect::Rectangle r = ser::rectangle_from_json(load_json(tr_rect));
      codes::CoreTrace trace = codes::iterative_extraction(code, r);
      write_out(tr_out, ser::core_trace_json(trace).dump(2) + "\n");
      return trace.all_checks() ? kExitOk : kExitCheckFailed;
    }

    if (*cex_cmd) {
      nnf::Circuit c = nnf::parse(slurp(cx_circuit));
      rect::Cover cover = nnf::extract_cover(c);
      json j = ser::cover_json(cover);
      j["gates"] = c.size();
      write_out(cx_out, j.dump(2) + "\n");
      return kExitOk;
    }

    if (*cvf_cmd) {
      boolfun::TruthTable f = boolfun::TruthTable::parse_text(slurp(cv_f));
      rect::Cover cover = ser::cover_from_json(load_json(cv_cover));
      rect::CoverReport rep = rect::verify_cover(f, cover, !cv_no_disjoint, !cv_no_balanced);
      std::cout << ser::cover_report_json(rep).dump(2) << "\n";
      return rep.ok ? kExitOk : kExitCheckFailed;
    }

    if (*bound_cmd) {
      num::Rational eps = num::Rational::parse(bd_eps);
      num::Rational k;
      if (bd_mode == "weak") k = rect::weak_cover_bound(bd_count, bd_n, eps, bd_delta);
      else if (bd_mode == "strong") k = rect::strong_cover_bound(bd_count, eps, bd_delta);
      else k = rect::strong_cover_pipeline(bd_count, bd_n, bd_m, eps);
      num::BigInt ceiling = k.sign() > 0 ? k.ceil() : num::BigInt(0);
      std::cout << "K_min = " << render_rational(k) << "\nceil = " << ceiling.to_decimal() << "\n";
      return kExitOk;
    }

    if (*exp_cmd) {
      exp::Report rep;
      if (*ex_good) rep = exp::suite_good_matrices(ex_m, ex_n, ex_s, opts);
      else if (*ex_maxrect) rep = exp::suite_max_rectangle(ex_n_max, ex_m, opts);
      else if (*ex_claims) rep = exp::suite_core_claims(ex_n_max, opts);
      else if (*ex_disccore) rep = exp::suite_disc_core(ex_n_max, opts);
      else if (*ex_bicount) rep = exp::suite_bilinear_count(ex_n, opts);
      else if (*ex_bidisc) rep = exp::suite_bilinear_disc(ex_n, opts);
      else rep = exp::suite_cover_theorem(ex_n_min, ex_n_max, opts);
      return emit_report(rep, ex_format, ex_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
