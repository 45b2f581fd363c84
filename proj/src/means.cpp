#include "rotavg/means.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace rotavg {

WeightedDataset::WeightedDataset(std::vector<Rotation> rotations)
    : WeightedDataset(rotations, std::vector<double>(rotations.size(), 1.0)) {}

WeightedDataset::WeightedDataset(std::vector<Rotation> rotations, std::vector<double> weights)
    : rotations_(std::move(rotations)), weights_(std::move(weights)) {
  if (rotations_.empty()) throw InvalidDataset("dataset must contain at least one rotation");
  if (rotations_.size() != weights_.size()) {
    std::ostringstream os;
    os << "dataset has " << rotations_.size() << " rotations but " << weights_.size() << " weights";
    throw InvalidDataset(os.str());
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      std::ostringstream os;
      os << "weight " << i << " is negative or not finite: " << weights_[i];
      throw InvalidDataset(os.str());
    }
    total_weight_ += weights_[i];
  }
  if (!(total_weight_ > 0.0)) throw InvalidDataset("all weights are zero");
}

bool WeightedDataset::is_unweighted() const {
  for (double w : weights_) {
    if (w != 1.0) return false;
  }
  return true;
}

WeightedDataset WeightedDataset::unweighted() const { return WeightedDataset(rotations_); }

void KarcherConfig::validate() const {
  if (!(tolerance > 0.0)) throw InvalidConfig("Karcher tolerance must be positive");
  if (max_iterations < 1) throw InvalidConfig("Karcher max_iterations must be >= 1");
}

Matrix3 euclidean_mean(const WeightedDataset& data) {
  Matrix3 sum = Matrix3::Zero();
  for (std::size_t i = 0; i < data.size(); ++i) {
    sum += data.weight(i) * data.rotation(i).matrix();
  }
  return sum / data.total_weight();
}

Rotation projected_mean(const WeightedDataset& data) { return project_to_so3(euclidean_mean(data)); }

Vector3 tangent_mean(const WeightedDataset& data, const Rotation& at) {
  const Rotation at_inv = at.transpose();
  Vector3 sum = Vector3::Zero();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.weight(i) == 0.0) continue;
    sum += data.weight(i) * log_so3(at_inv * data.rotation(i)).vector();
  }
  return sum / data.total_weight();
}

Rotation geodesic_mean(const WeightedDataset& data, const KarcherConfig& cfg) {
  cfg.validate();
  Rotation r = projected_mean(data);
  Vector3 step = tangent_mean(data, r);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (step.norm() < cfg.tolerance) return r;
    // Re-orthonormalize so rounding does not accumulate over iterations.
    r = project_to_so3((r * exp_so3(RotationVector(step))).matrix());
    step = tangent_mean(data, r);
  }
  if (step.norm() < cfg.tolerance) return r;
  std::ostringstream os;
  os << "geodesic mean did not converge in " << cfg.max_iterations
     << " iterations (tangent-mean norm " << step.norm() << ")";
  throw NoConvergence(os.str());
}

}  // namespace rotavg
