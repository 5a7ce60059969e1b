#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace kclab::exp {

using json = nlohmann::json;

/// One named inequality (or exactness) check with its outcome.
struct Check {
  std::string name;  // the formula being checked, e.g. "count == 2^(n-rk(H))"
  bool holds = false;
  std::uint64_t failures = 0;
  std::uint64_t total = 0;
};

struct Report {
  int schema_version = 1;
  std::string suite;
  json config;      // echoed parameters, reproducibility contract
  json aggregates;  // suite-level numbers
  json items;       // per-trial details (trimmed for large runs)
  std::vector<Check> checks;
  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
  json to_json(bool with_timestamp = true) const;
  std::string to_csv() const;
};

struct CommonOpts {
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
  int jobs = 0;                  // 0 = all cores
  std::size_t max_items = 50;    // per-trial detail rows kept in the report
};

Report suite_good_matrices(unsigned m, unsigned n, unsigned s, const CommonOpts& opts);
Report suite_max_rectangle(unsigned n_max, unsigned m_max, const CommonOpts& opts);
Report suite_core_claims(unsigned n_max, const CommonOpts& opts);
Report suite_disc_core(unsigned n_max, const CommonOpts& opts);
Report suite_bilinear_count(unsigned n, const CommonOpts& opts);
Report suite_bilinear_disc(unsigned n, const CommonOpts& opts);
Report suite_cover_theorem(unsigned n_min, unsigned n_max, const CommonOpts& opts);

}  // namespace kclab::exp
