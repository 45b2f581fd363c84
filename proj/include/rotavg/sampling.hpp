#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "rotavg/so3.hpp"

namespace rotavg {

/**
 * Seeded generator with a fixed, platform-independent bit stream.
 *
 * Raw bits come from std::mt19937_64, whose output sequence is pinned by the
 * standard. The uniform and normal transforms are implemented here rather
 * than with <random> distributions, whose algorithms vary across standard
 * libraries.
 */
class Rng {
 public:
  /// Recorded in dataset metadata so draws can be reproduced.
  static constexpr std::string_view kName = "mt19937_64+rotavg-transforms-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// splitmix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct VmfParams {
  UnitQuaternion mu;
  double kappa = 0.0;
  int n = 1;
  std::uint64_t seed = 0;

  /// Throws InvalidConfig unless kappa >= 0 (finite) and n >= 1.
  void validate() const;
};

/// n i.i.d. draws from the von Mises-Fisher distribution on S^3 (Wood's
/// rejection sampler). Signs are kept as drawn.
std::vector<UnitQuaternion> sample_vmf_s3(const VmfParams& params);

/// sample_vmf_s3 pushed through quat_to_rotation.
std::vector<Rotation> sample_rotations(const VmfParams& params);

/// n i.i.d. uniform values in [0, 1].
std::vector<double> sample_weights(int n, std::uint64_t seed);

}  // namespace rotavg
