#pragma once

#include <json.hpp>

#include "seqk/cv.hpp"

namespace seqk {

/// JSON form of a cross-validation report. Wall-clock timings are volatile
/// between runs, so they sit in a separate "timing" subtree that callers can
/// omit when comparing reports for reproducibility.
nlohmann::json cv_report_json(const CvReport& report, bool include_timing);

}  // namespace seqk
