#pragma once

// Signed-distance queries between posed bodies.
//
// Convex cores are resolved with GJK (separated) and EPA (overlapping
// cores); sphere/capsule pairs short-circuit to closed forms; the torus is
// handled through its core circle. Distances are millimetres; negative
// means penetration. The reported normal is a unit vector pointing from
// body `b` into body `a`, and witness points lie on the body surfaces.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "mog/shapes.hpp"

namespace mog {

struct DistanceResult {
  double distance = 0.0;
  Vec3 point_a{0, 0, 0};
  Vec3 point_b{0, 0, 0};
  Vec3 normal{0, 0, 1};  // from b to a
};

namespace gjk {

struct SupportVertex {
  Vec3 w;  // Minkowski difference point, a - b
  Vec3 a, b;
};

inline SupportVertex minkowski_support(const Collider& ca, const Collider& cb,
                                       const Vec3& dir) {
  SupportVertex s;
  s.a = core_support(ca, dir);
  s.b = core_support(cb, -dir);
  s.w = s.a - s.b;
  return s;
}

struct Simplex {
  std::array<SupportVertex, 4> v;
  std::array<double, 4> bary{};
  int n = 0;
};

// Closest point to the origin on the current simplex; reduces the simplex
// to the supporting feature and fills barycentric weights.
inline Vec3 closest_on_simplex(Simplex& s, bool& enclosed) {
  enclosed = false;
  if (s.n == 1) {
    s.bary[0] = 1.0;
    return s.v[0].w;
  }
  if (s.n == 2) {
    Vec3 A = s.v[0].w, B = s.v[1].w, AB = B - A;
    double len2 = AB.squaredNorm();
    double t = len2 > 0 ? std::clamp(-A.dot(AB) / len2, 0.0, 1.0) : 0.0;
    if (t <= 0.0) {
      s.n = 1;
      s.bary[0] = 1.0;
      return A;
    }
    if (t >= 1.0) {
      s.v[0] = s.v[1];
      s.n = 1;
      s.bary[0] = 1.0;
      return B;
    }
    s.bary[0] = 1.0 - t;
    s.bary[1] = t;
    return A + t * AB;
  }
  if (s.n == 3) {
    // Ericson, ClosestPtPointTriangle specialised to the origin.
    Vec3 a = s.v[0].w, b = s.v[1].w, c = s.v[2].w;
    Vec3 ab = b - a, ac = c - a, ap = -a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) {
      s.n = 1;
      s.bary[0] = 1;
      return a;
    }
    Vec3 bp = -b;
    double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) {
      s.v[0] = s.v[1];
      s.n = 1;
      s.bary[0] = 1;
      return b;
    }
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) {
      double t = d1 / (d1 - d3);
      s.n = 2;
      s.bary[0] = 1 - t;
      s.bary[1] = t;
      return a + t * ab;
    }
    Vec3 cp = -c;
    double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) {
      s.v[0] = s.v[2];
      s.n = 1;
      s.bary[0] = 1;
      return c;
    }
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) {
      double t = d2 / (d2 - d6);
      s.v[1] = s.v[2];
      s.n = 2;
      s.bary[0] = 1 - t;
      s.bary[1] = t;
      return a + t * ac;
    }
    double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) {
      double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
      s.v[0] = s.v[1];
      s.v[1] = s.v[2];
      s.n = 2;
      s.bary[0] = 1 - t;
      s.bary[1] = t;
      return s.v[0].w + t * (s.v[1].w - s.v[0].w);
    }
    double denom = 1.0 / (va + vb + vc);
    double v = vb * denom, w = vc * denom;
    s.bary[0] = 1 - v - w;
    s.bary[1] = v;
    s.bary[2] = w;
    return a + ab * v + ac * w;
  }
  // Tetrahedron: test origin against the four faces.
  Vec3 a = s.v[0].w, b = s.v[1].w, c = s.v[2].w, d = s.v[3].w;
  auto outside = [](const Vec3& p0, const Vec3& p1, const Vec3& p2,
                    const Vec3& opposite) {
    Vec3 n = (p1 - p0).cross(p2 - p0);
    double signp = n.dot(-p0), signd = n.dot(opposite - p0);
    return signp * signd < 0.0 || std::abs(signd) < 1e-300;
  };
  double best = 1e300;
  Simplex bestS;
  Vec3 bestP = Vec3::Zero();
  bool any_outside = false;
  const int faces[4][3] = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  const int opp[4] = {3, 1, 2, 0};
  for (int f = 0; f < 4; ++f) {
    if (!outside(s.v[faces[f][0]].w, s.v[faces[f][1]].w, s.v[faces[f][2]].w,
                 s.v[opp[f]].w)) {
      continue;
    }
    any_outside = true;
    Simplex tri;
    tri.n = 3;
    tri.v[0] = s.v[faces[f][0]];
    tri.v[1] = s.v[faces[f][1]];
    tri.v[2] = s.v[faces[f][2]];
    bool sub_enclosed = false;
    Vec3 p = closest_on_simplex(tri, sub_enclosed);
    double d2 = p.squaredNorm();
    if (d2 < best) {
      best = d2;
      bestS = tri;
      bestP = p;
    }
  }
  if (!any_outside) {
    enclosed = true;
    return Vec3::Zero();
  }
  s = bestS;
  return bestP;
}

struct GjkResult {
  bool overlapping = false;
  double core_distance = 0.0;
  Vec3 pa, pb;     // closest core points when separated
  Simplex simplex;  // final simplex (tetra when overlapping)
};

inline GjkResult gjk_distance(const Collider& a, const Collider& b) {
  GjkResult out;
  Vec3 dir = b.pose.position - a.pose.position;
  if (dir.squaredNorm() < 1e-18) dir = Vec3::UnitX();
  Simplex s;
  s.v[0] = minkowski_support(a, b, dir);
  s.n = 1;
  double scale = std::max({1.0, a.bounding_radius, b.bounding_radius,
                           (a.pose.position - b.pose.position).norm()});
  const double rel_tol = 1e-12 * scale * scale;
  Vec3 v = s.v[0].w;
  for (int iter = 0; iter < 128; ++iter) {
    bool enclosed = false;
    v = closest_on_simplex(s, enclosed);
    if (enclosed) {
      out.overlapping = true;
      out.simplex = s;
      return out;
    }
    double vlen2 = v.squaredNorm();
    if (vlen2 < 1e-20 * scale * scale) {
      // Touching cores; treat as zero-distance contact.
      break;
    }
    SupportVertex w = minkowski_support(a, b, -v);
    double progress = vlen2 - v.dot(w.w);
    if (progress <= rel_tol) break;
    bool duplicate = false;
    for (int i = 0; i < s.n; ++i) {
      if ((s.v[i].w - w.w).squaredNorm() < 1e-24 * scale * scale) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) break;
    s.v[s.n++] = w;
  }
  out.core_distance = v.norm();
  out.pa = Vec3::Zero();
  out.pb = Vec3::Zero();
  for (int i = 0; i < s.n; ++i) {
    out.pa += s.bary[i] * s.v[i].a;
    out.pb += s.bary[i] * s.v[i].b;
  }
  out.simplex = s;
  return out;
}

// --- EPA ---------------------------------------------------------------

struct EpaFace {
  int i0, i1, i2;
  Vec3 normal;   // outward unit normal
  double dist;   // distance of the face plane from the origin
  bool alive = true;
};

struct EpaResult {
  bool ok = false;
  double depth = 0.0;
  Vec3 normal;  // outward at the closest boundary point (push A by -normal)
  Vec3 pa, pb;
};

inline EpaResult epa_penetration(const Collider& a, const Collider& b,
                                 Simplex seed) {
  EpaResult out;
  double scale = std::max({1.0, a.bounding_radius, b.bounding_radius});
  std::vector<SupportVertex> verts(seed.v.begin(), seed.v.begin() + seed.n);

  // Ensure a non-degenerate tetrahedron around the origin.
  const Vec3 probes[6] = {Vec3::UnitX(),  -Vec3::UnitX(), Vec3::UnitY(),
                          -Vec3::UnitY(), Vec3::UnitZ(),  -Vec3::UnitZ()};
  int probe_at = 0;
  auto tetra_volume = [&]() {
    if (verts.size() < 4) return 0.0;
    return std::abs((verts[1].w - verts[0].w)
                        .cross(verts[2].w - verts[0].w)
                        .dot(verts[3].w - verts[0].w));
  };
  while ((verts.size() < 4 || tetra_volume() < 1e-12 * scale * scale * scale) &&
         probe_at < 6) {
    SupportVertex cand = minkowski_support(a, b, probes[probe_at++]);
    bool dup = false;
    for (const auto& v : verts) {
      if ((v.w - cand.w).squaredNorm() < 1e-20 * scale * scale) dup = true;
    }
    if (!dup) {
      if (verts.size() < 4) {
        verts.push_back(cand);
      } else {
        verts[3] = cand;
      }
    }
  }
  if (verts.size() < 4 || tetra_volume() <= 0.0) return out;

  Vec3 interior =
      (verts[0].w + verts[1].w + verts[2].w + verts[3].w) / 4.0;
  std::vector<EpaFace> faces;
  auto push_face = [&](int i0, int i1, int i2) {
    EpaFace f{i0, i1, i2, Vec3::Zero(), 0.0, true};
    Vec3 n = (verts[i1].w - verts[i0].w).cross(verts[i2].w - verts[i0].w);
    double nn = n.norm();
    if (nn < 1e-14 * scale * scale) return;  // sliver, drop
    n /= nn;
    if (n.dot(verts[i0].w - interior) < 0) {
      std::swap(f.i1, f.i2);
      n = -n;
    }
    f.normal = n;
    f.dist = n.dot(verts[f.i0].w);
    faces.push_back(f);
  };
  push_face(0, 1, 2);
  push_face(0, 2, 3);
  push_face(0, 3, 1);
  push_face(1, 3, 2);
  if (faces.size() < 4) return out;

  int best_face = -1;
  for (int iter = 0; iter < 256; ++iter) {
    // Closest live face to the origin.
    best_face = -1;
    double best = 1e300;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
      if (faces[i].alive && faces[i].dist < best) {
        best = faces[i].dist;
        best_face = i;
      }
    }
    if (best_face < 0) return out;
    const EpaFace f = faces[best_face];
    SupportVertex w = minkowski_support(a, b, f.normal);
    double growth = f.normal.dot(w.w) - f.dist;
    if (growth <= 1e-7 * scale + 1e-12) break;
    int wi = static_cast<int>(verts.size());
    verts.push_back(w);
    // Remove faces visible from w, collect the horizon.
    std::vector<std::pair<int, int>> horizon;
    for (auto& face : faces) {
      if (!face.alive) continue;
      if (face.normal.dot(w.w - verts[face.i0].w) > 1e-12 * scale) {
        face.alive = false;
        int e[3][2] = {{face.i0, face.i1}, {face.i1, face.i2},
                       {face.i2, face.i0}};
        for (auto& ed : e) {
          bool found = false;
          for (size_t h = 0; h < horizon.size(); ++h) {
            if (horizon[h].first == ed[1] && horizon[h].second == ed[0]) {
              horizon.erase(horizon.begin() + h);
              found = true;
              break;
            }
          }
          if (!found) horizon.emplace_back(ed[0], ed[1]);
        }
      }
    }
    for (auto& ed : horizon) push_face(ed.first, ed.second, wi);
  }

  if (best_face < 0) return out;
  const EpaFace& f = faces[best_face];
  // Barycentric coordinates of the origin's projection onto the face.
  Vec3 p0 = verts[f.i0].w, p1 = verts[f.i1].w, p2 = verts[f.i2].w;
  Vec3 proj = f.normal * f.dist;
  Vec3 e0 = p1 - p0, e1 = p2 - p0, ep = proj - p0;
  double d00 = e0.dot(e0), d01 = e0.dot(e1), d11 = e1.dot(e1);
  double d20 = ep.dot(e0), d21 = ep.dot(e1);
  double den = d00 * d11 - d01 * d01;
  double v = 0, w2 = 0;
  if (std::abs(den) > 1e-300) {
    v = (d11 * d20 - d01 * d21) / den;
    w2 = (d00 * d21 - d01 * d20) / den;
  }
  v = std::clamp(v, 0.0, 1.0);
  w2 = std::clamp(w2, 0.0, 1.0 - v);
  double u = 1.0 - v - w2;
  out.ok = true;
  out.depth = std::max(0.0, f.dist);
  out.normal = f.normal;
  out.pa = u * verts[f.i0].a + v * verts[f.i1].a + w2 * verts[f.i2].a;
  out.pb = u * verts[f.i0].b + v * verts[f.i1].b + w2 * verts[f.i2].b;
  return out;
}

}  // namespace gjk

namespace detail {

inline DistanceResult from_core_points(const Collider& a, const Collider& b,
                                       const Vec3& pa, const Vec3& pb,
                                       double core_dist) {
  DistanceResult r;
  Vec3 v = pa - pb;
  Vec3 n = core_dist > 1e-12 ? Vec3(v / core_dist) : Vec3(0, 0, 1);
  r.distance = core_dist - a.margin - b.margin;
  r.normal = n;
  r.point_a = pa - n * a.margin;
  r.point_b = pb + n * b.margin;
  return r;
}

inline DistanceResult from_epa(const Collider& a, const Collider& b,
                               const gjk::EpaResult& e) {
  DistanceResult r;
  Vec3 n = -e.normal;  // from b into a: pushing a along n separates
  r.distance = -(e.depth + a.margin + b.margin);
  r.normal = n;
  r.point_a = e.pa - n * a.margin;
  r.point_b = e.pb + n * b.margin;
  return r;
}

// Closest point on a world-posed circle to p; returns that point.
inline Vec3 closest_on_circle(const Vec3& p, const Pose& pose, double radius) {
  Vec3 local = pose.untransform(p);
  double nxy = std::hypot(local.x(), local.y());
  Vec3 on;
  if (nxy < 1e-12) {
    on = Vec3(radius, 0, 0);
  } else {
    on = Vec3(local.x() / nxy * radius, local.y() / nxy * radius, 0);
  }
  return pose.apply(on);
}

inline DistanceResult convex_pair(const Collider& a, const Collider& b) {
  auto g = gjk::gjk_distance(a, b);
  if (!g.overlapping && g.core_distance > 1e-9) {
    return from_core_points(a, b, g.pa, g.pb, g.core_distance);
  }
  if (!g.overlapping) {
    // Touching cores: zero core distance, direction from centres.
    Vec3 d = a.pose.position - b.pose.position;
    if (d.squaredNorm() < 1e-18) d = Vec3::UnitZ();
    d.normalize();
    DistanceResult r;
    r.distance = -(a.margin + b.margin);
    r.normal = d;
    r.point_a = g.pa - d * a.margin;
    r.point_b = g.pb + d * b.margin;
    return r;
  }
  auto e = gjk::epa_penetration(a, b, g.simplex);
  if (e.ok) return from_epa(a, b, e);
  // EPA failure fallback: centre axis separation.
  DistanceResult r;
  Vec3 d = a.pose.position - b.pose.position;
  if (d.squaredNorm() < 1e-18) d = Vec3::UnitZ();
  r.normal = d.normalized();
  r.distance = -(a.margin + b.margin);
  r.point_a = a.pose.position;
  r.point_b = b.pose.position;
  return r;
}

DistanceResult dispatch(const Collider& a, const Collider& b);

// Signed distance from a world point to a full body (margin included).
inline DistanceResult point_to_body(const Vec3& p, const Collider& body) {
  Collider pt = make_sphere_collider(0.0, p);
  return dispatch(pt, body);
}

// Circle-core (torus) vs arbitrary body: minimise the point query over the
// circle parameter; coarse scan plus golden-section refinement.
inline DistanceResult circle_vs_body(const Collider& torus,
                                     const Collider& other) {
  const auto& circ = std::get<CircleCore>(torus.core);
  auto circle_point = [&](double theta) {
    return torus.pose.apply(Vec3(circ.radius * std::cos(theta),
                                 circ.radius * std::sin(theta), 0.0));
  };
  const bool other_is_circle = std::holds_alternative<CircleCore>(other.core);
  auto eval = [&](double theta) {
    Vec3 cp = circle_point(theta);
    if (other_is_circle) {
      const auto& oc = std::get<CircleCore>(other.core);
      Vec3 q = closest_on_circle(cp, other.pose, oc.radius);
      return (cp - q).norm() - other.margin;
    }
    return point_to_body(cp, other).distance;
  };
  const int kCoarse = 64;
  double best_theta = 0, best_val = 1e300;
  for (int i = 0; i < kCoarse; ++i) {
    double th = 2.0 * kPi * i / kCoarse;
    double v = eval(th);
    if (v < best_val) {
      best_val = v;
      best_theta = th;
    }
  }
  double lo = best_theta - 2.0 * kPi / kCoarse;
  double hi = best_theta + 2.0 * kPi / kCoarse;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 48; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = eval(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = eval(x2);
    }
  }
  double theta = f1 < f2 ? x1 : x2;
  Vec3 cp = circle_point(theta);
  DistanceResult r;
  if (other_is_circle) {
    const auto& oc = std::get<CircleCore>(other.core);
    Vec3 q = closest_on_circle(cp, other.pose, oc.radius);
    double core_dist = (cp - q).norm();
    Vec3 n = core_dist > 1e-12 ? Vec3((cp - q) / core_dist) : Vec3(0, 0, 1);
    r.distance = core_dist - torus.margin - other.margin;
    r.normal = n;
    r.point_a = cp - n * torus.margin;
    r.point_b = q + n * other.margin;
    return r;
  }
  DistanceResult pq = point_to_body(cp, other);
  // pq.normal points from the body toward the circle point.
  r.distance = pq.distance - torus.margin;
  r.normal = pq.normal;
  r.point_a = cp - pq.normal * torus.margin;
  r.point_b = pq.point_b;
  return r;
}

inline DistanceResult dispatch_impl(const Collider& a, const Collider& b) {
  const bool a_circle = std::holds_alternative<CircleCore>(a.core);
  const bool b_circle = std::holds_alternative<CircleCore>(b.core);
  if (a_circle || b_circle) {
    if (a_circle) return circle_vs_body(a, b);
    DistanceResult r = circle_vs_body(b, a);
    std::swap(r.point_a, r.point_b);
    r.normal = -r.normal;
    return r;
  }
  const auto* pa = std::get_if<PointCore>(&a.core);
  const auto* pb = std::get_if<PointCore>(&b.core);
  const auto* sa = std::get_if<SegmentCore>(&a.core);
  const auto* sb = std::get_if<SegmentCore>(&b.core);
  if (pa && pb) {
    Vec3 wa = a.pose.position, wb = b.pose.position;
    return from_core_points(a, b, wa, wb, (wa - wb).norm());
  }
  if (pa && sb) {
    Vec3 wa = a.pose.position;
    Vec3 q = closest_point_on_segment(wa, b.pose.apply(sb->a),
                                      b.pose.apply(sb->b));
    return from_core_points(a, b, wa, q, (wa - q).norm());
  }
  if (sa && pb) {
    Vec3 wb = b.pose.position;
    Vec3 q = closest_point_on_segment(wb, a.pose.apply(sa->a),
                                      a.pose.apply(sa->b));
    return from_core_points(a, b, q, wb, (q - wb).norm());
  }
  if (sa && sb) {
    Vec3 qa, qb;
    double d = segment_segment_closest(a.pose.apply(sa->a), a.pose.apply(sa->b),
                                       b.pose.apply(sb->a), b.pose.apply(sb->b),
                                       qa, qb);
    return from_core_points(a, b, qa, qb, d);
  }
  return convex_pair(a, b);
}

inline DistanceResult dispatch(const Collider& a, const Collider& b) {
  return dispatch_impl(a, b);
}

inline bool order_before(const Collider& a, const Collider& b) {
  if (a.core.index() != b.core.index()) return a.core.index() < b.core.index();
  if (a.margin != b.margin) return a.margin < b.margin;
  const Vec3& pa = a.pose.position;
  const Vec3& pb = b.pose.position;
  if (pa.x() != pb.x()) return pa.x() < pb.x();
  if (pa.y() != pb.y()) return pa.y() < pb.y();
  return pa.z() < pb.z();
}

}  // namespace detail

// Public entry point. Computed in a canonical argument order so that
// swapping arguments exactly negates the normal and swaps the witnesses.
inline DistanceResult signed_distance(const Collider& a, const Collider& b) {
  if (detail::order_before(a, b)) {
    return detail::dispatch(a, b);
  }
  DistanceResult r = detail::dispatch(b, a);
  std::swap(r.point_a, r.point_b);
  r.normal = -r.normal;
  return r;
}

// Quick rejection helper for broad-phase loops.
inline bool bounding_overlap(const Collider& a, const Collider& b,
                             double slack = 0.0) {
  double rr = a.bounding_radius + b.bounding_radius + slack;
  return (a.pose.position - b.pose.position).squaredNorm() <= rr * rr;
}

// Farthest distance from `center` to any point of the body, with the
// attaining surface point. Direction scan with pattern refinement; exact
// for sphere cores.
inline double farthest_extent(const Collider& body, const Vec3& center,
                              Vec3* far_point = nullptr) {
  if (std::holds_alternative<PointCore>(body.core)) {
    Vec3 d = body.pose.position - center;
    double n = d.norm();
    if (far_point) {
      Vec3 dir = n > 1e-12 ? Vec3(d / n) : Vec3::UnitZ();
      *far_point = body.pose.position + dir * body.margin;
    }
    return n + body.margin;
  }
  auto eval = [&](const Vec3& dir, Vec3* pt) {
    Vec3 d = dir.normalized();
    Vec3 sp = core_support(body, d) + d * body.margin;
    if (pt) *pt = sp;
    return (sp - center).dot(d);
  };
  double best = -1e300;
  Vec3 best_dir = Vec3::UnitZ();
  const int kN = 128;
  for (int i = 0; i < kN; ++i) {
    // Fibonacci sphere scan.
    double z = 1.0 - 2.0 * (i + 0.5) / kN;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = i * 2.399963229728653;
    Vec3 d(r * std::cos(phi), r * std::sin(phi), z);
    double v = eval(d, nullptr);
    if (v > best) {
      best = v;
      best_dir = d;
    }
  }
  double step = 0.3;
  while (step > 1e-5) {
    bool improved = false;
    Vec3 t1, t2;
    tangent_basis(best_dir, t1, t2);
    for (const Vec3& pert : {t1, -t1, t2, -t2}) {
      Vec3 d = (best_dir + step * pert).normalized();
      double v = eval(d, nullptr);
      if (v > best) {
        best = v;
        best_dir = d;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  Vec3 fp;
  best = eval(best_dir, &fp);
  if (far_point) *far_point = fp;
  return (fp - center).norm();
}

}  // namespace mog
