#pragma once

// Kinematic model of a three-finger hand with one symmetric spread joint
// driving fingers 1 and 2, a base flexion joint per finger, and a distal
// joint hard-coupled to the base at a 1/3 ratio (seven joints in total).
// Finger 3 is the fixed opposing finger. Angles are degrees everywhere;
// radians appear only inside trigonometric evaluation.

#include <array>
#include <string>

#include "mog/distance.hpp"

namespace mog {

struct JointLimits {
  double spread_min_deg = 0.0, spread_max_deg = 180.0;
  double base_min_deg = 0.0, base_max_deg = 140.0;
};

struct HandConfiguration {
  double spread_deg = 0.0;
  std::array<double, 3> base_deg{0.0, 0.0, 0.0};

  // Hard 1/3 coupling; derived so the identity holds exactly at all times.
  double coupled_deg(int finger) const { return base_deg[finger] / 3.0; }
};

inline double apply_coupling(double base_deg, const JointLimits& limits = {}) {
  if (base_deg < limits.base_min_deg || base_deg > limits.base_max_deg) {
    throw LimitViolation("base joint " + format_double(base_deg) +
                         " deg outside [" + format_double(limits.base_min_deg) +
                         ", " + format_double(limits.base_max_deg) + "]");
  }
  return base_deg / 3.0;
}

inline HandConfiguration clamp_config(const HandConfiguration& c,
                                      const JointLimits& limits = {}) {
  HandConfiguration out = c;
  out.spread_deg =
      std::clamp(c.spread_deg, limits.spread_min_deg, limits.spread_max_deg);
  for (int i = 0; i < 3; ++i) {
    out.base_deg[i] =
        std::clamp(c.base_deg[i], limits.base_min_deg, limits.base_max_deg);
  }
  return out;
}

inline bool within_limits(const HandConfiguration& c,
                          const JointLimits& limits = {}) {
  if (c.spread_deg < limits.spread_min_deg ||
      c.spread_deg > limits.spread_max_deg) {
    return false;
  }
  for (double b : c.base_deg) {
    if (b < limits.base_min_deg || b > limits.base_max_deg) return false;
  }
  return true;
}

enum class OppositionClass { Opposed, SameSide, Neutral };

inline std::string to_string(OppositionClass c) {
  switch (c) {
    case OppositionClass::Opposed: return "opposed";
    case OppositionClass::SameSide: return "same-side";
    case OppositionClass::Neutral: return "neutral";
  }
  return "neutral";
}

struct OppositionBands {
  double opposed_max_deg = 30.0;
  double same_side_min_deg = 150.0;
};

// At spread 0 fingers 1,2 face finger 3; at 180 all three point one way.
inline OppositionClass opposition_class(const HandConfiguration& c,
                                        const OppositionBands& bands = {}) {
  if (c.spread_deg <= bands.opposed_max_deg) return OppositionClass::Opposed;
  if (c.spread_deg >= bands.same_side_min_deg) return OppositionClass::SameSide;
  return OppositionClass::Neutral;
}

// Dimensions are configuration, not ground truth; defaults approximate a
// commercial three-finger hand. Millimetres.
struct HandGeometry {
  double palm_radius = 45.0;
  double palm_thickness = 20.0;
  double mount_radius = 25.0;     // finger mount offset from palm centre
  double proximal_length = 70.0;
  double distal_length = 58.0;
  double link_radius = 12.0;
  double tip_fraction = 0.25;     // terminal share of the distal link
  double side_band_deg = 60.0;    // palmar half-width before "side" starts
};

inline void validate(const HandGeometry& g) {
  for (double v : {g.palm_radius, g.palm_thickness, g.mount_radius,
                   g.proximal_length, g.distal_length, g.link_radius}) {
    if (!(v > 0.0)) throw ValidationError("hand dimensions must be positive");
  }
  if (!(g.tip_fraction > 0.0 && g.tip_fraction < 1.0)) {
    throw ValidationError("tip fraction must lie in (0, 1)");
  }
  if (!(g.side_band_deg > 0.0 && g.side_band_deg < 180.0)) {
    throw ValidationError("side band must lie in (0, 180) degrees");
  }
}

struct HandLink {
  int finger = 0;  // 0,1 spread fingers; 2 fixed finger
  bool distal = false;
  Vec3 start, end;  // capsule axis endpoints, world
  double radius = 0.0;
  Vec3 axis_dir;     // unit, start->end
  Vec3 palmar_dir;   // unit, the face that presses when flexing
  Vec3 base_joint_origin, coupled_joint_origin;
  Vec3 joint_axis;   // unit; base and coupled axes are parallel
  Collider collider;
};

struct PosedHand {
  Pose wrist;
  HandConfiguration config;
  HandGeometry geom;
  Collider palm;
  std::array<HandLink, 6> links;  // finger-major: prox, dist per finger
  Vec3 palm_center;   // centre of the grasp face, world
  Vec3 palm_normal;   // unit, out of the grasp face
  Vec3 bounding_center;
  double bounding_radius = 0.0;

  const HandLink& link(int finger, bool distal) const {
    return links[finger * 2 + (distal ? 1 : 0)];
  }
};

// Azimuth of each finger's extension direction in the palm plane, degrees.
inline std::array<double, 3> finger_azimuths_deg(double spread_deg) {
  return {90.0 - spread_deg, 90.0 + spread_deg, -90.0};
}

inline std::array<Vec3, 3> finger_mounts_local(const HandGeometry& g) {
  return {Vec3(g.mount_radius, 0, 0), Vec3(-g.mount_radius, 0, 0),
          Vec3(0, -g.mount_radius, 0)};
}

inline PosedHand forward_kinematics(const HandConfiguration& config,
                                    const HandGeometry& geom,
                                    const Pose& wrist) {
  validate(geom);
  PosedHand hand;
  hand.wrist = wrist;
  hand.config = config;
  hand.geom = geom;

  Pose palm_pose = wrist * Pose{Quat::Identity(),
                                Vec3(0, 0, -geom.palm_thickness / 2)};
  hand.palm.core = CylinderCore{geom.palm_radius, geom.palm_thickness / 2};
  hand.palm.margin = 0.0;
  hand.palm.pose = palm_pose;
  hand.palm.bounding_radius =
      std::hypot(geom.palm_radius, geom.palm_thickness / 2);
  hand.palm_center = wrist.apply(Vec3::Zero());
  hand.palm_normal = wrist.rotate(Vec3::UnitZ());

  auto azimuths = finger_azimuths_deg(config.spread_deg);
  auto mounts = finger_mounts_local(geom);
  const Vec3 up_local = Vec3::UnitZ();

  for (int f = 0; f < 3; ++f) {
    double alpha = deg2rad(azimuths[f]);
    Vec3 u(std::cos(alpha), std::sin(alpha), 0.0);
    double beta = deg2rad(config.base_deg[f]);
    double gamma = deg2rad(config.coupled_deg(f));

    auto dir_at = [&](double ang) {
      return Vec3(u * std::cos(ang) + up_local * std::sin(ang));
    };

    Vec3 m = mounts[f];
    Vec3 prox_dir = dir_at(beta);
    Vec3 knuckle = m + geom.proximal_length * prox_dir;
    Vec3 dist_dir = dir_at(beta + gamma);
    Vec3 tip = knuckle + geom.distal_length * dist_dir;

    Vec3 joint_axis_local = up_local.cross(u);

    for (int d = 0; d < 2; ++d) {
      HandLink& link = hand.links[f * 2 + d];
      link.finger = f;
      link.distal = d == 1;
      Vec3 s_local = d == 0 ? m : knuckle;
      Vec3 e_local = d == 0 ? knuckle : tip;
      link.start = wrist.apply(s_local);
      link.end = wrist.apply(e_local);
      link.radius = geom.link_radius;
      link.axis_dir = (link.end - link.start).normalized();
      double face_ang = (d == 0 ? beta : beta + gamma) + kPi / 2;
      link.palmar_dir = wrist.rotate(dir_at(face_ang));
      link.base_joint_origin = wrist.apply(m);
      link.coupled_joint_origin = wrist.apply(knuckle);
      link.joint_axis = wrist.rotate(joint_axis_local);
      link.collider =
          make_capsule_collider(link.start, link.end, geom.link_radius);
    }
  }

  // Bounding sphere about the palm centre.
  double br = std::hypot(geom.palm_radius, geom.palm_thickness);
  for (const auto& link : hand.links) {
    br = std::max(br, (link.start - hand.palm_center).norm() + link.radius);
    br = std::max(br, (link.end - hand.palm_center).norm() + link.radius);
  }
  hand.bounding_center = hand.palm_center;
  hand.bounding_radius = br;
  return hand;
}

enum class HandRegion { Fingertip, FingerLink, FingerSide, Palm };

inline std::string to_string(HandRegion r) {
  switch (r) {
    case HandRegion::Fingertip: return "fingertip";
    case HandRegion::FingerLink: return "finger-link";
    case HandRegion::FingerSide: return "finger-side";
    case HandRegion::Palm: return "palm";
  }
  return "finger-link";
}

struct LinkSurfaceCoord {
  double t = 0.0;          // normalised axial position on the link
  double angle_deg = 0.0;  // signed angle from the palmar direction
};

inline LinkSurfaceCoord link_surface_coord(const HandLink& link,
                                           const Vec3& point) {
  Vec3 axis = link.end - link.start;
  double len2 = axis.squaredNorm();
  double t = len2 > 0 ? std::clamp((point - link.start).dot(axis) / len2, 0.0,
                                   1.0)
                      : 0.0;
  Vec3 on_axis = link.start + t * axis;
  Vec3 radial = point - on_axis;
  Vec3 radial_perp = radial - radial.dot(link.axis_dir) * link.axis_dir;
  LinkSurfaceCoord c;
  c.t = t;
  if (radial_perp.norm() < 1e-9) {
    c.angle_deg = 0.0;  // on the cap apex; treat as palmar
    return c;
  }
  Vec3 rp = radial_perp.normalized();
  double cosv = std::clamp(rp.dot(link.palmar_dir), -1.0, 1.0);
  c.angle_deg = rad2deg(std::acos(cosv));
  return c;
}

// Region of a witness point on one hand link (or the palm for link < 0).
// The point must lie on the body surface within `surface_tol`.
inline HandRegion label_region(const PosedHand& hand, int link_index,
                               const Vec3& point, double surface_tol = 0.5) {
  if (link_index < 0) {
    DistanceResult d = detail::point_to_body(point, hand.palm);
    if (std::abs(d.distance) > surface_tol) {
      throw GeometryError("witness point is not on the palm surface");
    }
    return HandRegion::Palm;
  }
  const HandLink& link = hand.links[link_index];
  Vec3 on_axis = closest_point_on_segment(point, link.start, link.end);
  double surf = (point - on_axis).norm() - link.radius;
  if (std::abs(surf) > surface_tol) {
    throw GeometryError("witness point is not on the link surface");
  }
  LinkSurfaceCoord c = link_surface_coord(link, point);
  if (link.distal && c.t >= 1.0 - hand.geom.tip_fraction) {
    return HandRegion::Fingertip;
  }
  if (c.angle_deg > hand.geom.side_band_deg) return HandRegion::FingerSide;
  return HandRegion::FingerLink;
}

}  // namespace mog
