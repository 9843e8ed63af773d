#pragma once
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "annulus/report.hpp"

namespace annulus {

// Runs the experiment named by config["id"].  Known ids (see
// experiment_list): identity, stein_l2, cor42, prop51, weighted41,
// wlayer_growth.  Reported values are ensemble maxima and therefore
// empirical lower bounds of the underlying operator norms.
ScalingReport run_experiment(const nlohmann::json& config);

std::vector<std::pair<std::string, std::string>> experiment_list();

// Serialization.  The JSON embeds the full config (grid, ensembles, seed);
// the timestamp field is appended only when requested so reports can be
// compared byte-for-byte across reruns.
nlohmann::ordered_json report_to_json(const ScalingReport& report,
                                      const nlohmann::json& config,
                                      bool with_timestamp);
std::string report_to_csv(const ScalingReport& report);

}  // namespace annulus
