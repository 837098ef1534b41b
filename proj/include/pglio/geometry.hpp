#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>

namespace pglio {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec9 = Eigen::Matrix<double, 9, 1>;
using Vec15 = Eigen::Matrix<double, 15, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat32 = Eigen::Matrix<double, 3, 2>;

// Angle below which exp/log/right-Jacobian switch to their Taylor branches.
inline constexpr double kSmallAngle = 1e-8;

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

inline Vec3 vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

/// Rodrigues formula; second-order Taylor branch below kSmallAngle.
inline Mat3 exp_so3(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const Mat3 w = skew(omega);
  double a, b;  // R = I + a*w + b*w^2
  if (theta2 < kSmallAngle * kSmallAngle) {
    a = 1.0 - theta2 / 6.0;
    b = 0.5 - theta2 / 24.0;
  } else {
    const double theta = std::sqrt(theta2);
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  return Mat3::Identity() + a * w + b * w * w;
}

/// Inverse of exp_so3. Angles within 1e-6 of pi take the axis from R + I,
/// which stays finite where the skew-part formula degenerates.
inline Vec3 log_so3(const Mat3& R) {
  const double cos_theta =
      std::min(1.0, std::max(-1.0, (R.trace() - 1.0) * 0.5));
  const double theta = std::acos(cos_theta);

  if (theta > M_PI - 1e-6) {
    // R + I = (1 + cos) I + (1 - cos) (2 a a^T - ...) -> columns ~ axis.
    const Mat3 B = R + Mat3::Identity();
    int k = 0;
    B.diagonal().maxCoeff(&k);
    Vec3 axis = B.col(k);
    axis.normalize();
    // Pick the sign that agrees with the (tiny) skew part when available.
    const Vec3 s = vee(R - R.transpose());
    if (s.dot(axis) < 0.0) axis = -axis;
    return theta * axis;
  }

  const Vec3 half_vee = 0.5 * vee(R - R.transpose());
  if (theta < kSmallAngle) {
    return (1.0 + theta * theta / 6.0) * half_vee;
  }
  return theta / std::sin(theta) * half_vee;
}

/// Right Jacobian of SO(3): Exp(w + dw) ~= Exp(w) Exp(Jr(w) dw).
inline Mat3 right_jacobian_so3(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const Mat3 w = skew(omega);
  if (theta2 < kSmallAngle * kSmallAngle) {
    return Mat3::Identity() - 0.5 * w + (1.0 / 6.0) * w * w;
  }
  const double theta = std::sqrt(theta2);
  const double a = (1.0 - std::cos(theta)) / theta2;
  const double b = (theta - std::sin(theta)) / (theta2 * theta);
  return Mat3::Identity() - a * w + b * w * w;
}

inline Mat3 right_jacobian_inv_so3(const Vec3& omega) {
  const double theta2 = omega.squaredNorm();
  const Mat3 w = skew(omega);
  if (theta2 < kSmallAngle * kSmallAngle) {
    return Mat3::Identity() + 0.5 * w + (1.0 / 12.0) * w * w;
  }
  const double theta = std::sqrt(theta2);
  const double b =
      1.0 / theta2 - (1.0 + std::cos(theta)) / (2.0 * theta * std::sin(theta));
  return Mat3::Identity() + 0.5 * w + b * w * w;
}

// Rigid transform T = [R p; 0 1]. Points map as p_out = R * p_in + p.
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 p = Vec3::Zero();

  Pose() = default;
  Pose(const Mat3& R_, const Vec3& p_) : R(R_), p(p_) {}

  static Pose Identity() { return Pose(); }

  Pose operator*(const Pose& o) const { return Pose(R * o.R, R * o.p + p); }
  Vec3 operator*(const Vec3& x) const { return R * x + p; }
  Pose inverse() const { return Pose(R.transpose(), -(R.transpose() * p)); }

  Eigen::Matrix4d matrix() const {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = R;
    m.topRightCorner<3, 1>() = p;
    return m;
  }

  bool isApprox(const Pose& o, double tol = 1e-9) const {
    return (R - o.R).norm() <= tol && (p - o.p).norm() <= tol;
  }
};

// Full per-scan state: pose T_WI, world velocity, accel/gyro biases.
// Tangent ordering for all Jacobians: [dtheta, dp, dv, dba, dbg].
struct NavState {
  Pose pose;
  Vec3 v = Vec3::Zero();
  Vec3 ba = Vec3::Zero();
  Vec3 bg = Vec3::Zero();
  double stamp = 0.0;
};

// Retraction convention (shared by every factor Jacobian in this library):
//   R <- R * Exp(dtheta),  p <- p + R * dp,  v <- v + dv,  biases additive.
inline NavState retract(const NavState& x, const Vec15& delta) {
  NavState y = x;
  y.pose.R = x.pose.R * exp_so3(delta.segment<3>(0));
  y.pose.p = x.pose.p + x.pose.R * delta.segment<3>(3);
  y.v = x.v + delta.segment<3>(6);
  y.ba = x.ba + delta.segment<3>(9);
  y.bg = x.bg + delta.segment<3>(12);
  return y;
}

inline Vec15 local(const NavState& x, const NavState& y) {
  Vec15 d;
  d.segment<3>(0) = log_so3(x.pose.R.transpose() * y.pose.R);
  d.segment<3>(3) = x.pose.R.transpose() * (y.pose.p - x.pose.p);
  d.segment<3>(6) = y.v - x.v;
  d.segment<3>(9) = y.ba - x.ba;
  d.segment<3>(12) = y.bg - x.bg;
  return d;
}

// Unit gravity direction on S^2 with a 2-dof tangent.
// basis() is a deterministic Householder frame of the tangent plane, so the
// same direction always yields the same parameterization.
struct GravityDir {
  Vec3 dir = Vec3(0, 0, -1);

  GravityDir() = default;
  explicit GravityDir(const Vec3& d) : dir(d.normalized()) {}

  Mat32 basis() const {
    const double alpha = dir.z() >= 0.0 ? -1.0 : 1.0;
    Vec3 v = dir;
    v.z() -= alpha;
    const double vtv = v.squaredNorm();
    Mat3 h = Mat3::Identity();
    if (vtv > 0.0) h -= (2.0 / vtv) * (v * v.transpose());
    Mat32 b;
    b.col(0) = h.col(0);
    b.col(1) = h.col(1);
    return b;
  }

  /// g' = Exp(B(g) * delta) * g, renormalized.
  GravityDir retract(const Vec2& delta) const {
    GravityDir out;
    out.dir = exp_so3(basis() * delta) * dir;
    out.dir.normalize();
    return out;
  }

  Vec2 local(const GravityDir& other) const {
    const Vec3 cr = dir.cross(other.dir);
    const double sn = cr.norm();
    const double cs = dir.dot(other.dir);
    const double angle = std::atan2(sn, cs);
    Vec3 axis = Vec3::Zero();
    if (sn > 1e-15) axis = cr / sn;
    return basis().transpose() * (angle * axis);
  }

  // d(retract)/d(delta) at delta = 0; columns span the tangent plane.
  Mat32 retract_jacobian() const { return -skew(dir) * basis(); }
};

inline double deg2rad(double d) { return d * M_PI / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / M_PI; }

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a <= 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace pglio
