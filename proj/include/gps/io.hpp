#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "gps/estimate.hpp"
#include "gps/metrics.hpp"
#include "gps/reservoir.hpp"

namespace gps {

inline constexpr const char* kReportFormatVersion = "gps-report/1";

// Reservoir debug snapshot: {capacity, zstar, edges: [{u, v, w, priority}]},
// edges sorted by endpoints.
nlohmann::json snapshot_json(const Reservoir& state);

nlohmann::json report_json(const EstimateReport& report);
nlohmann::json trial_summary_json(const TrialSummary& summary);

// One row per (graph, m, mode, weight_fn) configuration.
std::string trial_summary_csv_header();
std::string trial_summary_csv_row(const std::string& graph, std::size_t m,
                                  const std::string& mode,
                                  const std::string& weight_fn,
                                  const TrialSummary& summary);

void write_tracking_csv(const std::vector<TrackPoint>& points,
                        std::ostream& out);

}  // namespace gps
