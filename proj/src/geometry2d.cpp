#include "zigzag/geometry2d.hpp"

#include <algorithm>

namespace zigzag {

double segment_parameter(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double L2 = dot(d, d);
  if (L2 <= 0) return 0;
  return std::clamp(dot(p - a, d) / L2, 0.0, 1.0);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const double t = segment_parameter(p, a, b);
  return norm(p - (a + t * (b - a)));
}

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  if (segments_cross(a, b, c, d)) return 0;
  return std::min(std::min(point_segment_distance(a, c, d),
                           point_segment_distance(b, c, d)),
                  std::min(point_segment_distance(c, a, b),
                           point_segment_distance(d, a, b)));
}

}  // namespace zigzag
