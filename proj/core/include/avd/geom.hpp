#pragma once

#include <cmath>
#include <numbers>

#include "avd/scalar.hpp"

namespace avd {

inline constexpr double kTau = 2.0 * std::numbers::pi;

struct Point {
  double x = 0, y = 0;

  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
inline Point rot90(Point a) { return {-a.y, a.x}; }  // +90 degrees (ccw)
inline Point normalized(Point a) {
  double n = norm(a);
  return n > 0 ? Point{a.x / n, a.y / n} : Point{0, 0};
}

// Angle in [0, tau).
inline double norm_angle(double t) {
  t = std::fmod(t, kTau);
  if (t < 0) t += kTau;
  return t;
}
inline double angle_of(Point v) { return norm_angle(std::atan2(v.y, v.x)); }
inline Point unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

// ccw arc length from `from` to `to`, in [0, tau).
inline double ccw_delta(double from, double to) { return norm_angle(to - from); }

// Position along the conceptual curve at infinity. Gamma is never realized
// with coordinates; points on it are directions and the ccw angular order is
// the order along the curve.
struct Direction {
  double theta = 0;  // [0, tau)
  explicit Direction(double t = 0) : theta(norm_angle(t)) {}
};

inline bool angle_eq(double a, double b, double eps) {
  double d = ccw_delta(a, b);
  return d <= eps || kTau - d <= eps;
}

inline bool Tolerance::angle_close(double a, double b) const {
  return angle_eq(a, b, angular);
}

// theta inside the ccw interval [start, start+span], closed, span in (0, tau].
inline bool angle_in_ccw(double theta, double start, double span, double eps) {
  double d = ccw_delta(start, theta);
  return d <= span + eps || kTau - d <= eps;
}

// Endpoint of a curve piece: a concrete point, or a direction on Gamma.
struct EndPoint {
  bool at_gamma = false;
  Point pt{};
  double theta = 0;

  static EndPoint at(Point p) { return {false, p, 0}; }
  static EndPoint gamma(double th) { return {true, {}, norm_angle(th)}; }
};

inline bool same_endpoint(const EndPoint& a, const EndPoint& b, double tol,
                          double ang_tol) {
  if (a.at_gamma != b.at_gamma) return false;
  if (a.at_gamma) return angle_eq(a.theta, b.theta, ang_tol);
  return dist(a.pt, b.pt) <= tol;
}

struct Box {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  double diag() const { return std::hypot(xmax - xmin, ymax - ymin); }
  void grow(Point p) {
    xmin = std::min(xmin, p.x);
    ymin = std::min(ymin, p.y);
    xmax = std::max(xmax, p.x);
    ymax = std::max(ymax, p.y);
  }
};

}  // namespace avd
