#pragma once

#include <string>

#include <json.hpp>

#include "kclab/bilinear.hpp"
#include "kclab/codes.hpp"
#include "kclab/gf2.hpp"
#include "kclab/nnf.hpp"
#include "kclab/rational.hpp"
#include "kclab/rect.hpp"

namespace kclab::ser {

using json = nlohmann::json;

/// Rationals render as exact "p/q" (or "p") strings plus a 12 significant
/// digit decimal; the exact string is the source of truth.
json rational_json(const num::Rational& r);

json partition_json(const rect::Partition& p);
rect::Partition partition_from_json(const json& j);

json rectangle_json(const rect::Rectangle& r);
rect::Rectangle rectangle_from_json(const json& j);

json cover_json(const rect::Cover& c);
rect::Cover cover_from_json(const json& j);

json cover_report_json(const rect::CoverReport& r);
json core_trace_json(const codes::CoreTrace& t);
json disc_core_json(const codes::DiscCoreReport& r);
json goodness_json(const gf2::GoodnessReport& r);
json max_rect_json(const rect::MaxRectReport& r);
json ajtai_json(const bilinear::AjtaiReport& r);
json disc_bound_json(const bilinear::DiscBoundReport& r);
json validation_json(const nnf::ValidationReport& r);

/// Flattens a report into "path,value" CSV rows; the numeric content is the
/// same as the JSON rendering by construction.
std::string json_to_csv(const json& j);

}  // namespace kclab::ser
