#include "rotavg/kuramoto_flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotavg {
namespace {

std::vector<Matrix3> raw_matrices(const FlowState& state) {
  std::vector<Matrix3> out;
  out.reserve(state.size());
  for (const Rotation& r : state.rotations) out.push_back(r.matrix());
  return out;
}

void check_sizes(std::size_t state_size, std::size_t weight_count) {
  if (state_size != weight_count) {
    std::ostringstream os;
    os << "flow state has " << state_size << " members but " << weight_count << " weights";
    throw SizeMismatch(os.str());
  }
}

Matrix3 weighted_sum(std::span<const Matrix3> rotations, std::span<const double> weights) {
  Matrix3 s = Matrix3::Zero();
  for (std::size_t i = 0; i < rotations.size(); ++i) s += weights[i] * rotations[i];
  return s;
}

}  // namespace

FlowState FlowState::initial(const WeightedDataset& data) {
  FlowState state;
  state.rotations.assign(data.rotations().begin(), data.rotations().end());
  state.time = 0.0;
  return state;
}

void FlowConfig::validate() const {
  if (!(epsilon > 0.0)) throw InvalidConfig("epsilon must be positive");
  if (!(delta > 0.0)) throw InvalidConfig("delta must be positive");
  if (!(t_max >= delta)) throw InvalidConfig("t_max must be at least delta");
}

std::string_view to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::Converged:
      return "Converged";
    case FlowStatus::NonConsensus:
      return "NonConsensus";
    case FlowStatus::MaxTimeExceeded:
      return "MaxTimeExceeded";
  }
  return "Unknown";
}

void flow_rhs(std::span<const Matrix3> rotations, std::span<const double> weights,
              std::span<Matrix3> out) {
  check_sizes(rotations.size(), weights.size());
  if (out.size() != rotations.size()) throw SizeMismatch("output span has the wrong length");
  const double inv_n = 1.0 / static_cast<double>(rotations.size());
  const Matrix3 s = weighted_sum(rotations, weights);
  const Matrix3 st = s.transpose();
  for (std::size_t j = 0; j < rotations.size(); ++j) {
    const Matrix3& r = rotations[j];
    out[j].noalias() = inv_n * (s - r * st * r);
  }
}

std::vector<Matrix3> flow_rhs(const FlowState& state, const WeightedDataset& data) {
  check_sizes(state.size(), data.size());
  const std::vector<Matrix3> rs = raw_matrices(state);
  std::vector<Matrix3> out(rs.size());
  flow_rhs(rs, data.weights(), out);
  return out;
}

FlowState rk4_step(const FlowState& state, const WeightedDataset& data, double delta,
                   StepDiagnostics* diagnostics) {
  check_sizes(state.size(), data.size());
  const std::size_t n = state.size();
  const std::span<const double> w = data.weights();
  const std::vector<Matrix3> y = raw_matrices(state);

  std::vector<Matrix3> k1(n), k2(n), k3(n), k4(n), stage(n);
  flow_rhs(y, w, k1);
  for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + 0.5 * delta * k1[j];
  flow_rhs(stage, w, k2);
  for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + 0.5 * delta * k2[j];
  flow_rhs(stage, w, k3);
  for (std::size_t j = 0; j < n; ++j) stage[j] = y[j] + delta * k3[j];
  flow_rhs(stage, w, k4);

  FlowState next;
  next.time = state.time + delta;
  next.rotations.reserve(n);
  double drift = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Matrix3 m = y[j] + (delta / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    drift = std::max(drift, (m.transpose() * m - Matrix3::Identity()).norm());
    next.rotations.push_back(project_to_so3(m));
  }
  if (diagnostics != nullptr) diagnostics->max_drift = drift;
  return next;
}

double potential(const FlowState& state, const WeightedDataset& data) {
  check_sizes(state.size(), data.size());
  const std::vector<Matrix3> rs = raw_matrices(state);
  const Matrix3 s = weighted_sum(rs, data.weights());
  Matrix3 t = Matrix3::Zero();
  for (const Matrix3& r : rs) t += r;
  const double n = static_cast<double>(state.size());
  // sum_ij k_i Tr(R_i^T R_j) = Tr(S^T T)
  return -s.cwiseProduct(t).sum() / (2.0 * n * n);
}

double order_parameter(const FlowState& state) {
  Matrix3 sum = Matrix3::Zero();
  for (const Rotation& r : state.rotations) sum += r.matrix();
  return (sum / static_cast<double>(state.size())).determinant();
}

namespace {

Rotation representative(const FlowState& state, const WeightedDataset& data) {
  const WeightedDataset population(state.rotations,
                                   std::vector<double>(data.weights().begin(), data.weights().end()));
  try {
    return projected_mean(population);
  } catch (const DegenerateProjection&) {
    // Only reachable away from consensus; fall back to a member.
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (data.weight(i) > 0.0) return state.rotations[i];
    }
    return state.rotations.front();
  }
}

}  // namespace

FlowResult run_flow(const WeightedDataset& data, const FlowConfig& cfg, const FlowObserver& observer) {
  cfg.validate();
  const long max_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.delta - 1e-9));
  const long window = std::max(1L, std::lround(kStagnationWindow / cfg.delta));

  FlowResult result;
  FlowState state = FlowState::initial(data);
  std::vector<double> potentials;

  for (long k = 0;; ++k) {
    const double p = potential(state, data);
    const double order = order_parameter(state);
    potentials.push_back(p);
    if (cfg.record_trace) result.trace.push_back({state.time, p, order});

    if (1.0 - order < cfg.epsilon) {
      result.status = FlowStatus::Converged;
      break;
    }
    if (k >= window && std::abs(p - potentials[k - window]) < kStagnationThreshold) {
      result.status = FlowStatus::NonConsensus;
      break;
    }
    if (k >= max_steps) {
      result.status = FlowStatus::MaxTimeExceeded;
      break;
    }

    StepDiagnostics diag;
    state = rk4_step(state, data, cfg.delta, &diag);
    // Grid time k * delta, free of accumulated rounding.
    state.time = static_cast<double>(k + 1) * cfg.delta;
    result.max_step_drift = std::max(result.max_step_drift, diag.max_drift);
    result.steps = static_cast<int>(k + 1);
    if (observer) observer(state, diag);
  }

  result.termination_time = state.time;
  result.average = representative(state, data);
  result.final_state = std::move(state);
  return result;
}

}  // namespace rotavg
