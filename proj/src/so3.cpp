#include "rotavg/so3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

namespace rotavg {

double membership_error(const Matrix3& m) {
  const double orth = (m.transpose() * m - Matrix3::Identity()).norm();
  const double det = std::abs(m.determinant() - 1.0);
  const double err = std::max(orth, det);
  return std::isfinite(err) ? err : std::numeric_limits<double>::infinity();
}

Rotation Rotation::from_matrix(const Matrix3& m, double tolerance) {
  const double err = membership_error(m);
  if (!(err <= tolerance)) {
    std::ostringstream os;
    os << "matrix is not in SO(3): membership error " << err << " exceeds " << tolerance;
    throw InvalidRotation(os.str());
  }
  return Rotation(m);
}

RotationVector::RotationVector(const Vector3& omega) : omega_(omega) {
  if (!(omega.norm() <= std::numbers::pi + 1e-12)) {
    throw std::invalid_argument("rotation vector norm exceeds pi");
  }
}

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z)
    : UnitQuaternion(Vector4(w, x, y, z)) {}

UnitQuaternion::UnitQuaternion(const Vector4& coeffs) {
  const double n = coeffs.norm();
  if (!(std::abs(n - 1.0) <= kManifoldTolerance)) {
    std::ostringstream os;
    os << "quaternion norm " << n << " is not 1";
    throw NonUnitQuaternion(os.str());
  }
  q_ = coeffs / n;
}

UnitQuaternion UnitQuaternion::operator-() const { return UnitQuaternion(Vector4(-q_), Raw{}); }

bool UnitQuaternion::is_canonical() const {
  for (int i = 0; i < 4; ++i) {
    if (q_[i] != 0.0) return q_[i] > 0.0;
  }
  return true;
}

UnitQuaternion UnitQuaternion::canonical() const { return is_canonical() ? *this : -*this; }

Matrix3 hat(const Vector3& v) {
  Matrix3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

Vector3 vee(const Matrix3& m) {
  return 0.5 * Vector3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

Rotation exp_so3(const RotationVector& omega) {
  const Vector3& w = omega.vector();
  const double theta = w.norm();
  const Matrix3 k = hat(w);
  double a;  // sin(theta) / theta
  double b;  // (1 - cos(theta)) / theta^2
  if (theta < 1e-4) {
    const double t2 = theta * theta;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    const double s = std::sin(0.5 * theta);
    a = std::sin(theta) / theta;
    b = 2.0 * s * s / (theta * theta);
  }
  return Rotation::unchecked(Matrix3::Identity() + a * k + b * k * k);
}

RotationVector log_so3(const Rotation& r) {
  const UnitQuaternion q = rotation_to_quat(r);
  const Vector3 v(q.x(), q.y(), q.z());
  const double n = v.norm();
  if (n == 0.0) return RotationVector();
  const double theta = 2.0 * std::atan2(n, q.w());
  return RotationVector(v * (theta / n));
}

double dist_chordal(const Rotation& r1, const Rotation& r2) {
  return (r1.matrix() - r2.matrix()).norm();
}

double dist_geodesic(const Rotation& r1, const Rotation& r2) {
  return log_so3(r1.transpose() * r2).angle();
}

Rotation project_to_so3(const Matrix3& m) {
  if (!m.allFinite()) throw DegenerateProjection("matrix has non-finite entries");
  const Eigen::JacobiSVD<Matrix3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector3& s = svd.singularValues();
  Matrix3 u = svd.matrixU();
  const Matrix3& v = svd.matrixV();
  const double scale = s[0];
  if (scale == 0.0 || s[1] <= kProjectionDegeneracyTolerance * scale) {
    throw DegenerateProjection("matrix has rank <= 1; nearest rotation is not unique");
  }
  if ((u * v.transpose()).determinant() < 0.0) {
    if (s[1] - s[2] <= kProjectionDegeneracyTolerance * scale) {
      throw DegenerateProjection(
          "negative determinant with tied smallest singular values; nearest rotation is not unique");
    }
    u.col(2) = -u.col(2);
  }
  return Rotation::unchecked(u * v.transpose());
}

Rotation quat_to_rotation(const UnitQuaternion& q) {
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  const double xx = x * x, yy = y * y, zz = z * z;
  const double xy = x * y, xz = x * z, yz = y * z;
  const double wx = w * x, wy = w * y, wz = w * z;
  Matrix3 m;
  m << 1.0 - 2.0 * (yy + zz), 2.0 * (xy - wz), 2.0 * (xz + wy),
       2.0 * (xy + wz), 1.0 - 2.0 * (xx + zz), 2.0 * (yz - wx),
       2.0 * (xz - wy), 2.0 * (yz + wx), 1.0 - 2.0 * (xx + yy);
  return Rotation::unchecked(m);
}

UnitQuaternion rotation_to_quat(const Rotation& rot) {
  // Shepperd: divide by the largest of 4w^2, 4x^2, 4y^2, 4z^2.
  const Matrix3& r = rot.matrix();
  const double tr = r.trace();
  Vector4 q;
  if (tr >= r(0, 0) && tr >= r(1, 1) && tr >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q << 0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2));
    q << (r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) >= r(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2));
    q << (r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1));
    q << (r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s;
  }
  q.normalize();
  return UnitQuaternion(q).canonical();
}

std::array<Vector3, 3> sphere_points(const Rotation& r) {
  return {r.matrix().col(0), r.matrix().col(1), r.matrix().col(2)};
}

}  // namespace rotavg
