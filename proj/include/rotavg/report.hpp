#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotavg/so3.hpp"

namespace rotavg {

/// Result of one averaging method on one dataset.
struct MethodOutcome {
  std::string method;  ///< kl, klw, projected, geodesic
  std::optional<Rotation> average;
  std::string status;  ///< ok, Converged, NonConsensus, MaxTimeExceeded or failed
  std::optional<double> termination_time;
  std::optional<int> steps;
  std::string message;
};

struct Report {
  std::vector<MethodOutcome> methods;
  nlohmann::json metadata = nlohmann::json::object();
  /// Pairwise distances between method averages; NaN where an average is missing.
  std::vector<std::vector<double>> geodesic;
  std::vector<std::vector<double>> chordal;
};

Report build_report(std::vector<MethodOutcome> methods, nlohmann::json metadata);

nlohmann::json to_json(const Report& report);

/// Human-readable tables.
void print_report(std::ostream& out, const Report& report);

}  // namespace rotavg
