#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Geometry>

namespace petlock {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Wraps an angle into [-period/2, period/2).
inline double wrap_symmetric(double angle, double period) {
  double r = std::fmod(angle + 0.5 * period, period);
  if (r < 0.0) r += period;
  return r - 0.5 * period;
}

inline Mat3 rot_z(double rad) { return Eigen::AngleAxisd(rad, Vec3::UnitZ()).toRotationMatrix(); }

// Rotation given as a rotation vector (axis * angle, radians).
inline Mat3 rotation_from_vector(const Vec3& rv) {
  const double angle = rv.norm();
  if (angle == 0.0) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, rv / angle).toRotationMatrix();
}

// cos and sin of an angle in degrees; exact at multiples of 90 deg.
inline std::pair<double, double> cos_sin_deg(double deg) {
  const double q = deg / 90.0;
  if (q == std::round(q)) {
    static constexpr double c[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double s[4] = {0.0, 1.0, 0.0, -1.0};
    const long i = ((std::lround(q) % 4) + 4) % 4;
    return {c[i], s[i]};
  }
  const double r = deg_to_rad(deg);
  return {std::cos(r), std::sin(r)};
}

// Roll-pitch-yaw (degrees, applied X then Y then Z about fixed axes).
inline Mat3 rotation_from_rpy_deg(double roll, double pitch, double yaw) {
  const auto [cr, sr] = cos_sin_deg(roll);
  const auto [cp, sp] = cos_sin_deg(pitch);
  const auto [cy, sy] = cos_sin_deg(yaw);
  Mat3 rx, ry, rz;
  rx << 1, 0, 0, 0, cr, -sr, 0, sr, cr;
  ry << cp, 0, sp, 0, 1, 0, -sp, 0, cp;
  rz << cy, -sy, 0, sy, cy, 0, 0, 0, 1;
  return rz * ry * rx;
}

/// Rigid transform: maps points from the child frame into the parent frame.
struct Pose {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  Pose operator*(const Pose& rhs) const {
    return {rotation * rhs.rotation, rotation * rhs.translation + translation};
  }

  Pose inverse() const {
    Mat3 rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }
};

}  // namespace petlock
