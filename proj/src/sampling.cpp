#include "rotavg/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace rotavg {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void VmfParams::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw InvalidConfig("kappa must be finite and >= 0");
  if (n < 1) throw InvalidConfig("sample count must be >= 1");
}

namespace {

// Sphere S^{p-1} in R^p with p = 4.
constexpr double kDimMinusOne = 3.0;

// Beta(3/2, 3/2) as a ratio of chi-square(3) variates.
double beta_three_halves(Rng& rng) {
  double a = 0.0, b = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double x = rng.normal();
    a += x * x;
  }
  for (int i = 0; i < 3; ++i) {
    const double x = rng.normal();
    b += x * x;
  }
  return a / (a + b);
}

// Uniform unit vector orthogonal to mu.
Vector4 tangent_direction(Rng& rng, const Vector4& mu) {
  for (;;) {
    Vector4 v(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    v -= v.dot(mu) * mu;
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

}  // namespace

std::vector<UnitQuaternion> sample_vmf_s3(const VmfParams& params) {
  params.validate();
  Rng rng(params.seed);
  const Vector4& mu = params.mu.coeffs();
  const double kappa = params.kappa;

  // Wood (1994). b is written in the cancellation-free form.
  const double b = kDimMinusOne / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + kDimMinusOne * kDimMinusOne));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + kDimMinusOne * std::log(1.0 - x0 * x0);

  std::vector<UnitQuaternion> out;
  out.reserve(static_cast<std::size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    double w;
    for (;;) {
      const double z = beta_three_halves(rng);
      w = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
      const double u = rng.uniform();
      if (kappa * w + kDimMinusOne * std::log(1.0 - x0 * w) - c >= std::log(u)) break;
    }
    const Vector4 v = tangent_direction(rng, mu);
    const Vector4 q = w * mu + std::sqrt(std::max(0.0, 1.0 - w * w)) * v;
    out.emplace_back(q);
  }
  return out;
}

std::vector<Rotation> sample_rotations(const VmfParams& params) {
  const std::vector<UnitQuaternion> qs = sample_vmf_s3(params);
  std::vector<Rotation> out;
  out.reserve(qs.size());
  for (const UnitQuaternion& q : qs) out.push_back(quat_to_rotation(q));
  return out;
}

std::vector<double> sample_weights(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidConfig("sample count must be >= 1");
  Rng rng(seed);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& w : out) w = rng.uniform();
  return out;
}

}  // namespace rotavg
