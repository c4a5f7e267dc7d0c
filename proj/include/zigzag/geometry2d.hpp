#pragma once
#include <cmath>

namespace zigzag {

// Plane vectors and the handful of exact predicates the wall, tube and
// level-set machinery share.  Everything is closed-form double arithmetic.
struct Vec2 {
  double x = 0;
  double y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
// Left normal: rotation by +pi/2.
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

// Parameter in [0, 1] of the point of [a, b] closest to p.
double segment_parameter(Vec2 p, Vec2 a, Vec2 b);
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);
double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d);
// Interiors cross transversally (endpoint contact does not count).
bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

}  // namespace zigzag
