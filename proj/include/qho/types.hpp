#pragma once

#include <algorithm>
#include <cmath>

namespace qho {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct Box {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool contains(const Box& b) const {
    return b.x_min >= x_min && b.x_max <= x_max && b.y_min >= y_min && b.y_max <= y_max;
  }
  /// Scales about the origin.
  Box scaled(double f) const { return {x_min * f, x_max * f, y_min * f, y_max * f}; }
  Box transposed() const { return {y_min, y_max, x_min, x_max}; }
  static Box square(double half_width) { return {-half_width, half_width, -half_width, half_width}; }
  static Box hull(const Box& a, const Box& b) {
    return {std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max),
            std::min(a.y_min, b.y_min), std::max(a.y_max, b.y_max)};
  }
};

}  // namespace qho
