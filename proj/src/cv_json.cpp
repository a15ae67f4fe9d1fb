#include "seqk/cv_json.hpp"

#include "seqk/config_json.hpp"

namespace seqk {

nlohmann::json cv_report_json(const CvReport& r, bool include_timing) {
  nlohmann::json folds = nlohmann::json::array();
  std::vector<double> accuracies;
  for (const auto& f : r.folds) {
    accuracies.push_back(f.accuracy);
    nlohmann::json jf;
    jf["accuracy"] = f.accuracy;
    jf["svm_c"] = f.svm_c;
    jf["inner_accuracy"] = f.inner_accuracy;
    jf["config"] = to_json(f.config);
    folds.push_back(jf);
  }
  nlohmann::json j;
  j["fold_accuracies"] = accuracies;
  j["mean_accuracy"] = r.mean_accuracy;
  j["sd_accuracy"] = r.sd_accuracy;
  j["chosen"] = folds;
  j["median_symbol_distance"] = r.median_symbol_distance;
  j["candidate_count"] = r.candidate_count;
  j["cv"] = {{"outer_folds", r.options.outer_folds},
             {"outer_reps", r.options.outer_reps},
             {"inner_folds", r.options.inner_folds},
             {"inner_reps", r.options.inner_reps}};
  if (include_timing) {
    std::vector<double> secs;
    for (const auto& f : r.folds) secs.push_back(f.seconds);
    j["timing"] = {{"per_fold_seconds", secs}, {"total_seconds", r.total_seconds}};
  }
  return j;
}

}  // namespace seqk
