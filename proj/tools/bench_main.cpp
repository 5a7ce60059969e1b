// Serial reference vs OpenMP kernel timings; both paths must agree exactly.

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "kclab/gf2.hpp"
#include "kclab/parallel.hpp"
#include "kclab/rect.hpp"

using namespace kclab;

namespace {

template <typename F>
double time_ms(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-24s %10.2f ms %10.2f ms %7.2fx   %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kclab-bench: serial reference vs parallel kernels"};
  unsigned n = 16, m = 8, mc_n = 10, mc_m = 5;
  std::uint64_t trials = 300, seed = 1;
  app.add_option("--n", n, "goodness matrix columns");
  app.add_option("--m", m, "goodness matrix rows");
  app.add_option("--mc-n", mc_n, "monte carlo matrix columns");
  app.add_option("--mc-m", mc_m, "monte carlo matrix rows");
  app.add_option("--trials", trials, "monte carlo trials");
  app.add_option("--seed", seed, "seed");
  CLI11_PARSE(app, argc, argv);

  std::printf("jobs available: %d\n", effective_jobs(0));
  std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    gf2::Matrix h = gf2::sample_matrix(m, n, seed);
    gf2::GoodnessReport ser, par;
    double ts = time_ms([&] { ser = gf2::goodness_serial(h); });
    double tp = time_ms([&] { par = gf2::goodness(h); });
    row("goodness subsets", ts, tp, ser.s_max == par.s_max && ser.witness_subset == par.witness_subset);
  }
  {
    gf2::McGoodnessResult ser, par;
    double ts = time_ms([&] { ser = gf2::monte_carlo_goodness_serial(mc_m, mc_n, mc_m - 1, trials, seed); });
    double tp = time_ms([&] { par = gf2::monte_carlo_goodness(mc_m, mc_n, mc_m - 1, trials, seed); });
    row("monte carlo goodness", ts, tp, ser.good == par.good);
  }
  {
    gf2::Matrix h = gf2::sample_matrix(3, 11, seed);
    unsigned s = gf2::goodness(h).s_max;
    rect::MaxRectReport ser, par;
    double ts = time_ms([&] { ser = rect::max_code_rectangle_check_serial(h, s); });
    double tp = time_ms([&] { par = rect::max_code_rectangle_check(h, s); });
    bool equal = ser.all_hold == par.all_hold && ser.partitions.size() == par.partitions.size();
    row("max-rectangle scan", ts, tp, equal);
  }
  return 0;
}
