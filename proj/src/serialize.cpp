#include "kclab/serialize.hpp"

#include <stdexcept>

namespace kclab::ser {

json rational_json(const num::Rational& r) {
  return json{{"exact", r.to_string()}, {"decimal", r.to_decimal()}};
}

json partition_json(const rect::Partition& p) {
  return json{{"n", p.n}, {"x1", p.x1}, {"x2", p.x2}};
}

rect::Partition partition_from_json(const json& j) {
  return rect::make_partition(j.at("n").get<unsigned>(), j.at("x1").get<std::vector<unsigned>>());
}

json rectangle_json(const rect::Rectangle& r) {
  return json{{"partition", partition_json(r.part)}, {"rho1", r.rho1}, {"rho2", r.rho2}};
}

rect::Rectangle rectangle_from_json(const json& j) {
  return rect::make_rectangle(partition_from_json(j.at("partition")),
                              j.at("rho1").get<std::vector<std::uint32_t>>(),
                              j.at("rho2").get<std::vector<std::uint32_t>>());
}

json cover_json(const rect::Cover& c) {
  json rects = json::array();
  for (const auto& r : c.rectangles) rects.push_back(rectangle_json(r));
  return json{{"rectangles", rects},
              {"balanced", c.balanced},
              {"disjoint", c.disjoint},
              {"equivalent", c.equivalent},
              {"size", c.rectangles.size()}};
}

rect::Cover cover_from_json(const json& j) {
  rect::Cover c;
  for (const auto& r : j.at("rectangles")) c.rectangles.push_back(rectangle_from_json(r));
  c.balanced = j.value("balanced", false);
  c.disjoint = j.value("disjoint", false);
  c.equivalent = j.value("equivalent", false);
  return c;
}

json cover_report_json(const rect::CoverReport& r) {
  json j{{"equivalent", r.equivalent},
         {"disjoint", r.disjoint},
         {"balanced", r.balanced},
         {"ok", r.ok}};
  if (r.equivalence_witness) j["equivalence_witness"] = *r.equivalence_witness;
  if (r.overlap_pair) j["overlap_pair"] = {r.overlap_pair->first, r.overlap_pair->second};
  if (r.overlap_witness) j["overlap_witness"] = *r.overlap_witness;
  if (r.unbalanced_index) j["unbalanced_index"] = *r.unbalanced_index;
  return j;
}

json core_trace_json(const codes::CoreTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps)
    steps.push_back(json{{"a", s.a}, {"b", s.b}, {"false_positives", s.f_set}});
  return json{{"steps", steps},
              {"l", t.l},
              {"checks",
               {{"f_all_false_positives", t.f_all_false_positives},
                {"f_pairwise_disjoint", t.f_pairwise_disjoint},
                {"cores_cover_r_and_f", t.cores_cover_r_and_f},
                {"cores_disjoint", t.cores_disjoint},
                {"sizes_nonincreasing", t.sizes_nonincreasing}}},
              {"all_checks", t.all_checks()}};
}

json disc_core_json(const codes::DiscCoreReport& r) {
  return json{{"status", r.precondition_ok ? "ok" : "precondition-failed"},
              {"tp", r.tp},
              {"fp", r.fp},
              {"disc", rational_json(r.disc.value())},
              {"core_size", r.core_size},
              {"holds", r.holds}};
}

json goodness_json(const gf2::GoodnessReport& r) {
  return json{{"s_max", r.s_max},
              {"witness_subset", r.witness_subset},
              {"subset_threshold", r.subset_threshold}};
}

json max_rect_json(const rect::MaxRectReport& r) {
  json parts = json::array();
  for (const auto& p : r.partitions)
    parts.push_back(json{{"x1", p.x1},
                         {"rank1", p.rank1},
                         {"rank2", p.rank2},
                         {"max_rect_models", p.max_rect_models},
                         {"holds", p.holds}});
  return json{{"n", r.n},
              {"s", r.s},
              {"bound", r.bound},
              {"all_hold", r.all_hold},
              {"partitions", parts}};
}

json ajtai_json(const bilinear::AjtaiReport& r) {
  json j{{"holds", r.holds},
         {"delta_prime", rational_json(r.delta_prime)},
         {"submatrix_size", r.submatrix_size},
         {"required_rank", r.required_rank},
         {"exhaustive", r.exhaustive},
         {"checked", r.checked}};
  if (r.witness_rows) j["witness_rows"] = *r.witness_rows;
  if (r.witness_cols) j["witness_cols"] = *r.witness_cols;
  return j;
}

json disc_bound_json(const bilinear::DiscBoundReport& r) {
  json j{{"disc", rational_json(r.disc.value())},
         {"rank", r.rank},
         {"rank_check", {{"applicable", r.rank_check_applicable}, {"holds", r.rank_check_holds}}},
         {"averaging", {{"applicable", r.averaging_applicable}}},
         {"bridge", {{"checked", r.bridge_checked}, {"equal", r.bridge_equal}}}};
  if (r.averaging_applicable) {
    j["averaging"]["max_conditioned_disc"] = rational_json(r.max_conditioned_disc);
    j["averaging"]["avg_conditioned_disc"] = rational_json(r.avg_conditioned_disc);
    j["averaging"]["max_holds"] = r.averaging_max_holds;
    j["averaging"]["avg_holds"] = r.averaging_avg_holds;
  }
  return j;
}

json validation_json(const nnf::ValidationReport& r) {
  json j{{"is_nnf", r.is_nnf}, {"decomposable", r.decomposable}};
  if (r.deterministic) j["deterministic"] = *r.deterministic;
  else j["deterministic"] = "unchecked (cap exceeded)";
  if (r.decomposability_witness) j["decomposability_witness"] = *r.decomposability_witness;
  if (r.determinism_witness_gate) j["determinism_witness_gate"] = *r.determinism_witness_gate;
  if (r.determinism_witness_model) j["determinism_witness_model"] = *r.determinism_witness_model;
  j["is_d_dnnf"] = r.is_d_dnnf();
  return j;
}

namespace {
void flatten(const json& j, const std::string& path, std::string& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& el : j) flatten(el, path + "[" + std::to_string(i++) + "]", out);
    if (j.empty()) out += path + ",[]\n";
  } else {
    out += path + "," + j.dump() + "\n";
  }
}
}  // namespace

std::string json_to_csv(const json& j) {
  std::string out = "path,value\n";
  flatten(j, "", out);
  return out;
}

}  // namespace kclab::ser
