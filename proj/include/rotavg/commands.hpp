#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "rotavg/dataset_io.hpp"
#include "rotavg/kuramoto_flow.hpp"
#include "rotavg/means.hpp"
#include "rotavg/report.hpp"

namespace rotavg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,       ///< IO error, Karcher non-convergence, degenerate projection
  kExitInvalidInput = 2,  ///< parse or validation error
  kExitNonConsensus = 3,
  kExitMaxTime = 4,
};

enum class Method { KL, KLW, Projected, Geodesic };

std::string_view to_string(Method m);
/// Throws std::invalid_argument for unknown names.
Method parse_method(std::string_view name);

struct RunOptions {
  FlowConfig flow;
  KarcherConfig karcher;
  bool repair = false;
  std::optional<std::uint64_t> seed;  ///< echoed into report metadata
  std::filesystem::path report_out;   ///< JSON report, empty for none
};

struct AverageOptions {
  std::filesystem::path input;
  Method method = Method::KL;
  RunOptions run;
};

struct CompareOptions {
  std::filesystem::path input;
  RunOptions run;
};

struct SampleOptions {
  Vector4 mu = Vector4(0.5, 0.5, 0.5, 0.5);
  double kappa = 0.5;
  int n = 500;
  std::uint64_t seed = 1;
  bool weights = false;
  Representation format = Representation::Matrix;
  std::filesystem::path out;
};

struct TraceOptions {
  std::filesystem::path input;
  Method method = Method::KL;
  RunOptions run;
  std::filesystem::path out;
};

/// Each command prints its report to out, diagnostics to err, and returns an ExitCode.
int cmd_average(const AverageOptions& opts, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sample(const SampleOptions& opts, std::ostream& out, std::ostream& err);
int cmd_trace(const TraceOptions& opts, std::ostream& out, std::ostream& err);

/// <dir>/<stem><suffix>, e.g. sidecar_path("run/trace.csv", ".sphere.csv") == "run/trace.sphere.csv".
std::filesystem::path sidecar_path(const std::filesystem::path& path, std::string_view suffix);

}  // namespace rotavg::cli
