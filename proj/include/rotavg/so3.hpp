#pragma once

#include <array>

#include <Eigen/Dense>

#include "rotavg/errors.hpp"

namespace rotavg {

using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;
using Vector4 = Eigen::Vector4d;

/// Default tolerance for SO(3) membership and unit-norm checks on construction.
inline constexpr double kManifoldTolerance = 1e-9;

/// max(||M^T M - I||_F, |det M - 1|). Zero exactly on SO(3).
double membership_error(const Matrix3& m);

/**
 * A proper 3D rotation matrix.
 *
 * Instances are only created through validating factories (from_matrix) or
 * by the library's own constructions (exp, projection, products), so a
 * Rotation always satisfies the SO(3) invariants up to kManifoldTolerance.
 */
class Rotation {
 public:
  Rotation() : m_(Matrix3::Identity()) {}

  static Rotation identity() { return Rotation(); }

  /// Throws InvalidRotation if membership_error(m) > tolerance.
  static Rotation from_matrix(const Matrix3& m, double tolerance = kManifoldTolerance);

  /// Wraps m without checking. The caller guarantees m is in SO(3).
  static Rotation unchecked(const Matrix3& m) { return Rotation(m); }

  const Matrix3& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  Rotation transpose() const { return Rotation(m_.transpose()); }
  Rotation inverse() const { return transpose(); }

  Rotation operator*(const Rotation& rhs) const { return Rotation(m_ * rhs.m_); }

  bool operator==(const Rotation& rhs) const { return m_ == rhs.m_; }

 private:
  explicit Rotation(const Matrix3& m) : m_(m) {}

  Matrix3 m_;
};

/// Axis-angle vector: direction is the rotation axis, norm the angle in [0, pi].
class RotationVector {
 public:
  RotationVector() : omega_(Vector3::Zero()) {}
  /// Throws std::invalid_argument if ||omega|| > pi + 1e-12.
  explicit RotationVector(const Vector3& omega);
  RotationVector(double x, double y, double z) : RotationVector(Vector3(x, y, z)) {}

  const Vector3& vector() const { return omega_; }
  double angle() const { return omega_.norm(); }

 private:
  Vector3 omega_;
};

/**
 * Unit quaternion (w, x, y, z) on S^3.
 *
 * The stored sign is the one given at construction: q and -q are distinct
 * points on S^3 that map to the same rotation. canonical() picks the
 * representative with w >= 0 (first nonzero component positive when w == 0).
 */
class UnitQuaternion {
 public:
  UnitQuaternion() : q_(1.0, 0.0, 0.0, 0.0) {}
  /// Normalizes; throws NonUnitQuaternion if | ||q|| - 1 | > kManifoldTolerance.
  UnitQuaternion(double w, double x, double y, double z);
  /// coeffs ordered (w, x, y, z).
  explicit UnitQuaternion(const Vector4& coeffs);

  double w() const { return q_[0]; }
  double x() const { return q_[1]; }
  double y() const { return q_[2]; }
  double z() const { return q_[3]; }
  const Vector4& coeffs() const { return q_; }

  double dot(const UnitQuaternion& other) const { return q_.dot(other.q_); }

  UnitQuaternion operator-() const;
  UnitQuaternion canonical() const;
  bool is_canonical() const;

  bool operator==(const UnitQuaternion& rhs) const { return q_ == rhs.q_; }

 private:
  struct Raw {};
  UnitQuaternion(const Vector4& q, Raw) : q_(q) {}

  Vector4 q_;
};

/// Skew-symmetric matrix [v]_x with [v]_x u = v x u.
Matrix3 hat(const Vector3& v);
/// Inverse of hat on the skew part of m.
Vector3 vee(const Matrix3& m);

/// Rodrigues formula.
Rotation exp_so3(const RotationVector& omega);

/// Principal logarithm, angle in [0, pi]. Goes through the quaternion so the
/// half-turn case needs no special handling.
RotationVector log_so3(const Rotation& r);

/// ||R1 - R2||_F, in [0, 2*sqrt(2)].
double dist_chordal(const Rotation& r1, const Rotation& r2);

/// Rotation angle of R1^T R2, equal to ||Log(R1^T R2)||_F / sqrt(2). In [0, pi].
double dist_geodesic(const Rotation& r1, const Rotation& r2);

/// Relative singular-value gap below which project_to_so3 reports a tie.
inline constexpr double kProjectionDegeneracyTolerance = 1e-10;

/**
 * Nearest rotation to m in the Frobenius norm.
 *
 * Computed from the SVD m = U S V^T as U diag(1, 1, det(U V^T)) V^T. Throws
 * DegenerateProjection when the minimizer is not unique: rank(m) <= 1, or
 * det(m) < 0 with the two smallest singular values tied.
 */
Rotation project_to_so3(const Matrix3& m);

/// Double cover S^3 -> SO(3). q and -q give bitwise identical matrices.
Rotation quat_to_rotation(const UnitQuaternion& q);

/// Inverse of the double cover on the canonical sheet (w >= 0).
UnitQuaternion rotation_to_quat(const Rotation& r);

/// Columns of R, i.e. the images of the three coordinate axes on S^2.
std::array<Vector3, 3> sphere_points(const Rotation& r);

}  // namespace rotavg
