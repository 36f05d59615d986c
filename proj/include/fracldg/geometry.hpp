#pragma once

#include <array>
#include <cmath>

namespace fracldg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return s * a; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

using TriangleVerts = std::array<Vec2, 3>;

// Twice the signed area (positive for counterclockwise vertex order).
inline double signed_area2(const TriangleVerts& t) {
  return cross(t[1] - t[0], t[2] - t[0]);
}

inline double triangle_area(const TriangleVerts& t) {
  return 0.5 * std::abs(signed_area2(t));
}

inline Vec2 triangle_centroid(const TriangleVerts& t) {
  return (t[0] + t[1] + t[2]) / 3.0;
}

inline double triangle_diameter(const TriangleVerts& t) {
  return std::max({norm(t[1] - t[0]), norm(t[2] - t[1]), norm(t[0] - t[2])});
}

// Map reference coordinates on {(0,0),(1,0),(0,1)} to the physical triangle.
inline Vec2 map_to_physical(const TriangleVerts& t, Vec2 ref) {
  return (1.0 - ref.x - ref.y) * t[0] + ref.x * t[1] + ref.y * t[2];
}

// Inverse of map_to_physical; valid for non-degenerate triangles.
inline Vec2 map_to_reference(const TriangleVerts& t, Vec2 p) {
  const Vec2 e1 = t[1] - t[0];
  const Vec2 e2 = t[2] - t[0];
  const double det = cross(e1, e2);
  const Vec2 d = p - t[0];
  return {cross(d, e2) / det, cross(e1, d) / det};
}

}  // namespace fracldg
