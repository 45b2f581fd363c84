#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "rotavg/means.hpp"
#include "rotavg/so3.hpp"

namespace rotavg {

/// Population R_1(t)..R_N(t) of the consensus flow at time t.
struct FlowState {
  std::vector<Rotation> rotations;
  double time = 0.0;

  /// R_j(0) = data rotations, t = 0.
  static FlowState initial(const WeightedDataset& data);
  std::size_t size() const { return rotations.size(); }
};

struct FlowConfig {
  double epsilon = 1e-5;  ///< stop when 1 - det(R_hat) < epsilon
  double delta = 0.01;    ///< RK4 step in flow time
  double t_max = 1000.0;
  bool record_trace = true;

  /// Throws InvalidConfig.
  void validate() const;
};

enum class FlowStatus { Converged, NonConsensus, MaxTimeExceeded };

std::string_view to_string(FlowStatus status);

struct TracePoint {
  double t;
  double potential;
  double order_parameter;
};

struct FlowResult {
  Rotation average;
  double termination_time = 0.0;
  FlowStatus status = FlowStatus::MaxTimeExceeded;
  /// One entry per visited grid time 0, delta, 2*delta, ... (empty unless
  /// cfg.record_trace).
  std::vector<TracePoint> trace;
  FlowState final_state;
  int steps = 0;
  /// Largest ||R^T R - I||_F seen before re-projection over all steps.
  double max_step_drift = 0.0;
};

/**
 * dR_j/dt = (1/N) sum_i k_i (R_i - R_j R_i^T R_j), evaluated through
 * S = sum_i k_i R_i as (S - R_j S^T R_j) / N. Unit weights give the
 * unweighted flow. Throws SizeMismatch if state and data sizes differ.
 */
std::vector<Matrix3> flow_rhs(const FlowState& state, const WeightedDataset& data);

/// Same as flow_rhs on raw matrices (RK4 stages are off the manifold).
void flow_rhs(std::span<const Matrix3> rotations, std::span<const double> weights,
              std::span<Matrix3> out);

struct StepDiagnostics {
  /// max_j ||R_j^T R_j - I||_F of the RK4 update before re-projection.
  double max_drift = 0.0;
};

/// Classical four-stage RK4 step followed by re-projection of every member
/// onto SO(3). Advances time by delta.
FlowState rk4_step(const FlowState& state, const WeightedDataset& data, double delta,
                   StepDiagnostics* diagnostics = nullptr);

/// -(1 / (2 N^2)) sum_i sum_j k_i Tr(R_i^T R_j). Equals -3/2 at consensus for unit weights.
double potential(const FlowState& state, const WeightedDataset& data);

/// det of the unweighted mean (1/N) sum_j R_j; in [0, 1], 1 only at consensus.
double order_parameter(const FlowState& state);

/// Flow time over which a stalled potential signals a non-consensus equilibrium.
inline constexpr double kStagnationWindow = 1.0;
inline constexpr double kStagnationThreshold = 1e-12;

using FlowObserver = std::function<void(const FlowState&, const StepDiagnostics&)>;

/**
 * Integrates the consensus flow from R_j(0) = data until the population
 * aligns (1 - det R_hat < epsilon), the potential stalls short of alignment
 * (NonConsensus), or t_max is reached. The stopping test runs at t = 0 and
 * after every step. The returned average is the projected weighted mean of
 * the final population. The observer, if given, sees every post-step state.
 */
FlowResult run_flow(const WeightedDataset& data, const FlowConfig& cfg = {},
                    const FlowObserver& observer = {});

}  // namespace rotavg
