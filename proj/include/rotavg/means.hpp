#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rotavg/so3.hpp"

namespace rotavg {

/**
 * Rotations R_1..R_N with nonnegative weights k_1..k_N.
 *
 * Invariants: N >= 1, one weight per rotation, all weights finite and >= 0,
 * at least one weight > 0. Unweighted data carries all-ones weights.
 */
class WeightedDataset {
 public:
  /// Unit weights.
  explicit WeightedDataset(std::vector<Rotation> rotations);
  /// Throws InvalidDataset if the invariants above do not hold.
  WeightedDataset(std::vector<Rotation> rotations, std::vector<double> weights);

  std::size_t size() const { return rotations_.size(); }
  std::span<const Rotation> rotations() const { return rotations_; }
  std::span<const double> weights() const { return weights_; }
  const Rotation& rotation(std::size_t i) const { return rotations_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double total_weight() const { return total_weight_; }
  bool is_unweighted() const;

  /// Same rotations, all weights set to 1.
  WeightedDataset unweighted() const;

 private:
  std::vector<Rotation> rotations_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
};

struct KarcherConfig {
  double tolerance = 1e-10;  ///< radians, on the weighted tangent-mean norm
  int max_iterations = 100;

  /// Throws InvalidConfig.
  void validate() const;
};

/// sum k_i R_i / sum k_i. Not a rotation in general.
Matrix3 euclidean_mean(const WeightedDataset& data);

/// Chordal (projected arithmetic) mean: project_to_so3(euclidean_mean(data)).
/// Propagates DegenerateProjection.
Rotation projected_mean(const WeightedDataset& data);

/// sum k_i log(R^T R_i) / sum k_i, the Riemannian gradient direction of the
/// weighted geodesic cost at R.
Vector3 tangent_mean(const WeightedDataset& data, const Rotation& at);

/// Geodesic (Karcher) mean via the fixed point R <- R exp(tangent_mean(R)),
/// started at projected_mean(data). Returns once ||tangent_mean|| < tolerance;
/// throws NoConvergence after cfg.max_iterations updates.
Rotation geodesic_mean(const WeightedDataset& data, const KarcherConfig& cfg = {});

}  // namespace rotavg
