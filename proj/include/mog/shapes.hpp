#pragma once

// The eleven primitive object kinds, their size parameterisation, and the
// convex-core / margin decomposition consumed by the distance queries.

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "mog/geometry.hpp"

namespace mog {

enum class ShapeKind {
  Sphere,
  Hemisphere,
  Cuboid,
  Cone,
  SquarePyramid,
  TriangularPyramid,
  Cylinder,
  HexagonalPrism,
  TriangularPrism,
  RectangularPrism,
  Torus,
};

inline constexpr int kShapeKindCount = 11;

enum class SizeClass { Small, Large };

inline std::string to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::Sphere: return "sphere";
    case ShapeKind::Hemisphere: return "hemisphere";
    case ShapeKind::Cuboid: return "cuboid";
    case ShapeKind::Cone: return "cone";
    case ShapeKind::SquarePyramid: return "square_pyramid";
    case ShapeKind::TriangularPyramid: return "triangular_pyramid";
    case ShapeKind::Cylinder: return "cylinder";
    case ShapeKind::HexagonalPrism: return "hexagonal_prism";
    case ShapeKind::TriangularPrism: return "triangular_prism";
    case ShapeKind::RectangularPrism: return "rectangular_prism";
    case ShapeKind::Torus: return "torus";
  }
  return "sphere";
}

inline ShapeKind shape_kind_from_string(const std::string& s) {
  for (int i = 0; i < kShapeKindCount; ++i) {
    auto k = static_cast<ShapeKind>(i);
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown shape kind: '" + s + "'");
}

inline std::string to_string(SizeClass c) {
  return c == SizeClass::Small ? "small" : "large";
}

inline SizeClass size_class_from_string(const std::string& s) {
  if (s == "small") return SizeClass::Small;
  if (s == "large") return SizeClass::Large;
  throw ValidationError("unknown size class: '" + s + "'");
}

// Size parameters are millimetres, canonical frames:
//   sphere {r}                    centred at origin
//   hemisphere {r}                flat face on z=0, dome toward +z
//   cuboid {edge}                 centred
//   cone {base_r, height}         base on z=0, apex at +height
//   square_pyramid {edge, height} base on z=0, apex at +height
//   triangular_pyramid {edge}     regular tetrahedron centred at origin
//   cylinder {r, height}          centred, axis z
//   hexagonal_prism {circum_r, height}  centred, axis z
//   triangular_prism {edge, height}     centred, axis z
//   rectangular_prism {sx, sy, sz}      centred (full extents)
//   torus {major_r, minor_r}      centred, axis z
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Sphere;
  SizeClass size_class = SizeClass::Small;
  std::vector<double> params;
};

inline int shape_param_count(ShapeKind k) {
  switch (k) {
    case ShapeKind::Sphere:
    case ShapeKind::Hemisphere:
    case ShapeKind::Cuboid:
    case ShapeKind::TriangularPyramid: return 1;
    case ShapeKind::Cone:
    case ShapeKind::SquarePyramid:
    case ShapeKind::Cylinder:
    case ShapeKind::HexagonalPrism:
    case ShapeKind::TriangularPrism:
    case ShapeKind::Torus: return 2;
    case ShapeKind::RectangularPrism: return 3;
  }
  return 1;
}

inline void validate(const ShapeSpec& spec) {
  if (static_cast<int>(spec.params.size()) != shape_param_count(spec.kind)) {
    throw ValidationError("shape " + to_string(spec.kind) + " expects " +
                          std::to_string(shape_param_count(spec.kind)) +
                          " size parameters");
  }
  for (double p : spec.params) {
    if (!(p > 0.0)) {
      throw ValidationError("shape size parameters must be positive");
    }
  }
  if (spec.kind == ShapeKind::Torus && spec.params[1] >= spec.params[0]) {
    throw ValidationError("torus minor radius must be below major radius");
  }
}

// Characteristic lengths of the two size classes. The source material gives
// classes without dimensions, so these are configuration defaults.
inline double characteristic_length(SizeClass c) {
  return c == SizeClass::Small ? 15.0 : 30.0;
}

inline ShapeSpec default_shape(ShapeKind kind, SizeClass size_class) {
  double L = characteristic_length(size_class);
  ShapeSpec s{kind, size_class, {}};
  switch (kind) {
    case ShapeKind::Sphere: s.params = {L / 2}; break;
    case ShapeKind::Hemisphere: s.params = {L / 2}; break;
    case ShapeKind::Cuboid: s.params = {L}; break;
    case ShapeKind::Cone: s.params = {L / 2, L}; break;
    case ShapeKind::SquarePyramid: s.params = {L, L}; break;
    case ShapeKind::TriangularPyramid: s.params = {L}; break;
    case ShapeKind::Cylinder: s.params = {L / 2, L}; break;
    case ShapeKind::HexagonalPrism: s.params = {L / 2, L}; break;
    case ShapeKind::TriangularPrism: s.params = {L, L}; break;
    case ShapeKind::RectangularPrism: s.params = {L, 0.75 * L, 0.5 * L}; break;
    case ShapeKind::Torus: s.params = {L / 2, L / 6}; break;
  }
  return s;
}

// --- convex cores -----------------------------------------------------
//
// Every body is a convex core swept by a margin ball, except the torus
// whose core is a circle (non-convex; it gets a dedicated distance path).

struct PointCore {};

struct SegmentCore {
  Vec3 a{0, 0, 0}, b{0, 0, 0};  // local frame endpoints
};

struct BoxCore {
  Vec3 half{1, 1, 1};
};

struct CylinderCore {
  double radius = 1, half_height = 1;
};

struct ConeCore {
  double radius = 1, height = 1;  // base on z=0, apex at +height
};

struct HemisphereCore {
  double radius = 1;  // flat face on z=0, dome toward +z
};

struct PolyCore {
  std::vector<Vec3> vertices;
};

struct CircleCore {
  double radius = 1;  // in the local z=0 plane
};

using ShapeCore = std::variant<PointCore, SegmentCore, BoxCore, CylinderCore,
                               ConeCore, HemisphereCore, PolyCore, CircleCore>;

// A posed body: core + margin + rigid pose. `bounding_radius` is the radius
// of a ball around pose.position that contains the body.
struct Collider {
  ShapeCore core;
  double margin = 0.0;
  Pose pose;
  double bounding_radius = 0.0;
};

namespace detail {

inline Vec3 support_local(const PointCore&, const Vec3&) { return Vec3::Zero(); }

inline Vec3 support_local(const SegmentCore& s, const Vec3& d) {
  return d.dot(s.b - s.a) >= 0.0 ? s.b : s.a;
}

inline Vec3 support_local(const BoxCore& b, const Vec3& d) {
  return Vec3(d.x() >= 0 ? b.half.x() : -b.half.x(),
              d.y() >= 0 ? b.half.y() : -b.half.y(),
              d.z() >= 0 ? b.half.z() : -b.half.z());
}

inline Vec3 support_local(const CylinderCore& c, const Vec3& d) {
  double nxy = std::hypot(d.x(), d.y());
  Vec3 radial = nxy > 1e-12 ? Vec3(d.x() / nxy * c.radius, d.y() / nxy * c.radius, 0)
                            : Vec3::Zero();
  radial.z() = d.z() >= 0 ? c.half_height : -c.half_height;
  return radial;
}

inline Vec3 support_local(const ConeCore& c, const Vec3& d) {
  Vec3 apex(0, 0, c.height);
  double nxy = std::hypot(d.x(), d.y());
  Vec3 rim = nxy > 1e-12 ? Vec3(d.x() / nxy * c.radius, d.y() / nxy * c.radius, 0)
                         : Vec3(c.radius, 0, 0);
  Vec3 base = d.z() >= 0 && nxy <= 1e-12 ? apex : rim;
  return d.dot(apex) >= d.dot(base) ? apex : base;
}

inline Vec3 support_local(const HemisphereCore& h, const Vec3& d) {
  double n = d.norm();
  if (n <= 1e-12) return Vec3::Zero();
  if (d.z() >= 0.0) return d / n * h.radius;  // dome
  double nxy = std::hypot(d.x(), d.y());
  if (nxy <= 1e-12) return Vec3::Zero();  // centre of the flat face
  return Vec3(d.x() / nxy * h.radius, d.y() / nxy * h.radius, 0);  // rim
}

inline Vec3 support_local(const PolyCore& p, const Vec3& d) {
  double best = -1e300;
  Vec3 bv = Vec3::Zero();
  for (const Vec3& v : p.vertices) {
    double s = d.dot(v);
    if (s > best) {
      best = s;
      bv = v;
    }
  }
  return bv;
}

inline Vec3 support_local(const CircleCore& c, const Vec3& d) {
  double nxy = std::hypot(d.x(), d.y());
  if (nxy <= 1e-12) return Vec3(c.radius, 0, 0);
  return Vec3(d.x() / nxy * c.radius, d.y() / nxy * c.radius, 0);
}

}  // namespace detail

// World-frame support point of the core (margin excluded).
inline Vec3 core_support(const Collider& c, const Vec3& world_dir) {
  Vec3 local_dir = c.pose.unrotate(world_dir);
  Vec3 p = std::visit(
      [&](const auto& core) { return detail::support_local(core, local_dir); },
      c.core);
  return c.pose.apply(p);
}

// Extreme extent of the full body (margin included) along a direction.
inline double support_extent(const Collider& c, const Vec3& world_dir) {
  return core_support(c, world_dir).dot(world_dir) + c.margin;
}

namespace detail {

inline std::vector<Vec3> prism_vertices(int sides, double circum_r, double h,
                                        double phase) {
  std::vector<Vec3> v;
  v.reserve(2 * sides);
  for (int i = 0; i < sides; ++i) {
    double a = phase + 2.0 * kPi * i / sides;
    double x = circum_r * std::cos(a), y = circum_r * std::sin(a);
    v.emplace_back(x, y, -h / 2);
    v.emplace_back(x, y, h / 2);
  }
  return v;
}

}  // namespace detail

// Centre of mass of the canonical (local) shape, for wrench torques.
inline Vec3 shape_com_local(const ShapeSpec& s) {
  switch (s.kind) {
    case ShapeKind::Hemisphere: return Vec3(0, 0, 3.0 * s.params[0] / 8.0);
    case ShapeKind::Cone: return Vec3(0, 0, s.params[1] / 4.0);
    case ShapeKind::SquarePyramid: return Vec3(0, 0, s.params[1] / 4.0);
    default: return Vec3::Zero();
  }
}

inline double shape_volume(const ShapeSpec& s) {
  const auto& p = s.params;
  switch (s.kind) {
    case ShapeKind::Sphere: return 4.0 / 3.0 * kPi * p[0] * p[0] * p[0];
    case ShapeKind::Hemisphere: return 2.0 / 3.0 * kPi * p[0] * p[0] * p[0];
    case ShapeKind::Cuboid: return p[0] * p[0] * p[0];
    case ShapeKind::Cone: return kPi * p[0] * p[0] * p[1] / 3.0;
    case ShapeKind::SquarePyramid: return p[0] * p[0] * p[1] / 3.0;
    case ShapeKind::TriangularPyramid:
      return p[0] * p[0] * p[0] / (6.0 * std::sqrt(2.0));
    case ShapeKind::Cylinder: return kPi * p[0] * p[0] * p[1];
    case ShapeKind::HexagonalPrism:
      return 3.0 * std::sqrt(3.0) / 2.0 * p[0] * p[0] * p[1];
    case ShapeKind::TriangularPrism:
      return std::sqrt(3.0) / 4.0 * p[0] * p[0] * p[1];
    case ShapeKind::RectangularPrism: return p[0] * p[1] * p[2];
    case ShapeKind::Torus:
      return 2.0 * kPi * kPi * p[0] * p[1] * p[1];
  }
  return 0.0;
}

// Radius of a ball about the local origin containing the shape.
inline double shape_bounding_radius(const ShapeSpec& s) {
  const auto& p = s.params;
  switch (s.kind) {
    case ShapeKind::Sphere: return p[0];
    case ShapeKind::Hemisphere: return p[0];
    case ShapeKind::Cuboid: return std::sqrt(3.0) / 2.0 * p[0];
    case ShapeKind::Cone: return std::max(p[0], p[1]);
    case ShapeKind::SquarePyramid:
      return std::max(p[0] / std::sqrt(2.0), p[1]);
    case ShapeKind::TriangularPyramid: return p[0] * std::sqrt(3.0 / 8.0);
    case ShapeKind::Cylinder: return std::hypot(p[0], p[1] / 2);
    case ShapeKind::HexagonalPrism: return std::hypot(p[0], p[1] / 2);
    case ShapeKind::TriangularPrism:
      return std::hypot(p[0] / std::sqrt(3.0), p[1] / 2);
    case ShapeKind::RectangularPrism:
      return 0.5 * Vec3(p[0], p[1], p[2]).norm();
    case ShapeKind::Torus: return p[0] + p[1];
  }
  return p[0];
}

// Radius used to scale torques against forces in contact wrenches.
inline double shape_characteristic_radius(const ShapeSpec& s) {
  return shape_bounding_radius(s);
}

inline Collider make_collider(const ShapeSpec& s, const Pose& pose) {
  validate(s);
  const auto& p = s.params;
  Collider c;
  c.pose = pose;
  c.bounding_radius = shape_bounding_radius(s);
  switch (s.kind) {
    case ShapeKind::Sphere:
      c.core = PointCore{};
      c.margin = p[0];
      break;
    case ShapeKind::Hemisphere:
      c.core = HemisphereCore{p[0]};
      break;
    case ShapeKind::Cuboid:
      c.core = BoxCore{Vec3(p[0] / 2, p[0] / 2, p[0] / 2)};
      break;
    case ShapeKind::Cone:
      c.core = ConeCore{p[0], p[1]};
      break;
    case ShapeKind::SquarePyramid: {
      PolyCore poly;
      double h = p[0] / 2;
      poly.vertices = {Vec3(h, h, 0), Vec3(-h, h, 0), Vec3(-h, -h, 0),
                       Vec3(h, -h, 0), Vec3(0, 0, p[1])};
      c.core = std::move(poly);
      break;
    }
    case ShapeKind::TriangularPyramid: {
      PolyCore poly;
      double a = p[0] / (2.0 * std::sqrt(2.0));
      poly.vertices = {Vec3(a, a, a), Vec3(a, -a, -a), Vec3(-a, a, -a),
                       Vec3(-a, -a, a)};
      c.core = std::move(poly);
      break;
    }
    case ShapeKind::Cylinder:
      c.core = CylinderCore{p[0], p[1] / 2};
      break;
    case ShapeKind::HexagonalPrism:
      c.core = PolyCore{detail::prism_vertices(6, p[0], p[1], 0.0)};
      break;
    case ShapeKind::TriangularPrism:
      c.core = PolyCore{detail::prism_vertices(3, p[0] / std::sqrt(3.0), p[1],
                                               kPi / 2)};
      break;
    case ShapeKind::RectangularPrism:
      c.core = BoxCore{Vec3(p[0] / 2, p[1] / 2, p[2] / 2)};
      break;
    case ShapeKind::Torus:
      c.core = CircleCore{p[0]};
      c.margin = p[1];
      break;
  }
  return c;
}

inline Collider make_sphere_collider(double radius, const Vec3& center) {
  Collider c;
  c.core = PointCore{};
  c.margin = radius;
  c.pose = Pose{Quat::Identity(), center};
  c.bounding_radius = radius;
  return c;
}

inline Collider make_capsule_collider(const Vec3& a, const Vec3& b,
                                      double radius) {
  Collider c;
  Vec3 mid = (a + b) / 2;
  c.core = SegmentCore{a - mid, b - mid};
  c.margin = radius;
  c.pose = Pose{Quat::Identity(), mid};
  c.bounding_radius = (b - a).norm() / 2 + radius;
  return c;
}

}  // namespace mog
