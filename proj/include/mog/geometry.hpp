#pragma once

// Small geometric vocabulary on top of Eigen: rigid poses, tangent bases,
// closest-point primitives and uniform samplers.

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "mog/core.hpp"

namespace mog {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

struct Pose {
  Quat rotation{1.0, 0.0, 0.0, 0.0};
  Vec3 position{0.0, 0.0, 0.0};

  Vec3 apply(const Vec3& local) const { return rotation * local + position; }
  Vec3 rotate(const Vec3& v) const { return rotation * v; }
  Vec3 untransform(const Vec3& world) const {
    return rotation.conjugate() * (world - position);
  }
  Vec3 unrotate(const Vec3& v) const { return rotation.conjugate() * v; }

  Pose inverse() const {
    Quat qc = rotation.conjugate();
    return Pose{qc, qc * (-position)};
  }
};

// (a * b).apply(x) == a.apply(b.apply(x))
inline Pose operator*(const Pose& a, const Pose& b) {
  return Pose{(a.rotation * b.rotation).normalized(),
              a.rotation * b.position + a.position};
}

inline Pose make_pose(const Quat& q, const Vec3& p) {
  return Pose{q.normalized(), p};
}

// Deterministic orthonormal completion of a unit vector.
inline void tangent_basis(const Vec3& n, Vec3& t1, Vec3& t2) {
  Vec3 ref = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  t1 = n.cross(ref).normalized();
  t2 = n.cross(t1);
}

inline Vec3 sample_unit_vector(Rng& rng) {
  // Uniform on S^2 via z/phi parameterisation.
  double z = rng.uniform(-1.0, 1.0);
  double phi = rng.uniform(0.0, 2.0 * kPi);
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Vec3(r * std::cos(phi), r * std::sin(phi), z);
}

inline Quat sample_uniform_quat(Rng& rng) {
  // Shoemake subgroup algorithm.
  double u1 = rng.uniform();
  double u2 = rng.uniform(0.0, 2.0 * kPi);
  double u3 = rng.uniform(0.0, 2.0 * kPi);
  double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  return Quat(a * std::sin(u2), a * std::cos(u2), b * std::sin(u3),
              b * std::cos(u3))
      .normalized();
}

inline Vec3 closest_point_on_segment(const Vec3& p, const Vec3& a,
                                     const Vec3& b) {
  Vec3 ab = b - a;
  double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return a;
  double t = (p - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return a + t * ab;
}

// Closest points between segments [a0,a1] and [b0,b1] (Ericson 5.1.9).
inline double segment_segment_closest(const Vec3& a0, const Vec3& a1,
                                      const Vec3& b0, const Vec3& b1, Vec3& pa,
                                      Vec3& pb) {
  Vec3 d1 = a1 - a0, d2 = b1 - b0, r = a0 - b0;
  double A = d1.squaredNorm(), E = d2.squaredNorm(), F = d2.dot(r);
  double s = 0.0, t = 0.0;
  constexpr double eps = 1e-30;
  if (A <= eps && E <= eps) {
    pa = a0;
    pb = b0;
    return (pa - pb).norm();
  }
  if (A <= eps) {
    t = std::clamp(F / E, 0.0, 1.0);
  } else {
    double C = d1.dot(r);
    if (E <= eps) {
      s = std::clamp(-C / A, 0.0, 1.0);
    } else {
      double B = d1.dot(d2);
      double den = A * E - B * B;
      if (den > eps) {
        s = std::clamp((B * F - C * E) / den, 0.0, 1.0);
      }
      t = (B * s + F) / E;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-C / A, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((B - C) / A, 0.0, 1.0);
      }
    }
  }
  pa = a0 + d1 * s;
  pb = b0 + d2 * t;
  return (pa - pb).norm();
}

}  // namespace mog
