#pragma once

#include <cmath>

namespace activemix {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;

  double norm() const { return std::hypot(x, y); }
};

/// Maps a coordinate into the periodic interval [-half_width, half_width).
inline double wrap_coordinate(double value, double half_width) {
  if (value >= -half_width && value < half_width) return value;
  const double width = 2.0 * half_width;
  double w = value - width * std::floor((value + half_width) / width);
  // floor() can land one ulp outside the interval
  if (w < -half_width) w += width;
  if (w >= half_width) w = -half_width;
  return w;
}

inline Vec2 wrap_position(const Vec2& p, double half_width) {
  return {wrap_coordinate(p.x, half_width), wrap_coordinate(p.y, half_width)};
}

/// Displacement xi - xj under the minimum image convention of a periodic box
/// spanning [-half_width, half_width) per axis.
inline Vec2 minimum_image_displacement(const Vec2& xi, const Vec2& xj,
                                       double half_width) {
  return wrap_position(xi - xj, half_width);
}

}  // namespace activemix
