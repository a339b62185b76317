#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace gcpoly {

/// A 2-D point in pixel units.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }

/// Ordered point sequence, open or closed.
///
/// Construction enforces: at least two points, finite coordinates, no two
/// consecutive identical points, and for closed polylines first == last
/// exactly (the closing duplicate is stored explicitly).
class Polyline {
 public:
  Polyline(std::vector<Point> points, bool closed);

  static Polyline open(std::vector<Point> points) { return {std::move(points), false}; }
  /// Appends the closing duplicate when `points` does not already end on its start.
  static Polyline ring(std::vector<Point> points);

  std::span<const Point> points() const { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const Point& front() const { return points_.front(); }
  const Point& back() const { return points_.back(); }
  std::size_t size() const { return points_.size(); }
  bool closed() const { return closed_; }

  friend bool operator==(const Polyline&, const Polyline&) = default;

 private:
  std::vector<Point> points_;
  bool closed_ = false;
};

/// One exterior ring (positive signed area) plus holes (negative signed area).
struct Polygon {
  Polyline exterior;
  std::vector<Polyline> interiors;
};

/// Perpendicular distance from q to the infinite line through a and b.
/// Falls back to |q - a| when a == b.
double point_to_line(Point q, Point a, Point b);

/// Distance from q to the closed segment [a, b].
double point_to_segment(Point q, Point a, Point b);

/// Shoelace area; positive iff anti-clockwise. Throws if `ring` is not closed.
double signed_area(const Polyline& ring);

double arc_length(const Polyline& line);

/// Samples points along `line` at arc-length spacing `step`, starting at the
/// first point. Open inputs keep their last point (the final gap may be
/// shorter); closed inputs stay closed.
Polyline resample_uniform(const Polyline& line, double step);

/// Keeps `limit` points at indices round(i*(T-1)/(limit-1)); identity when T <= limit.
Polyline downsample_to(const Polyline& line, std::size_t limit);

Polyline reversed(const Polyline& line);

/// Number of distinct vertices: the closing duplicate of a closed ring counts once.
std::size_t distinct_vertex_count(const Polyline& line);
std::size_t distinct_vertex_count(const Polygon& polygon);

}  // namespace gcpoly
