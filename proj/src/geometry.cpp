#include "gcpoly/geometry.hpp"

#include <stdexcept>
#include <string>

namespace gcpoly {

Polyline::Polyline(std::vector<Point> points, bool closed)
    : points_(std::move(points)), closed_(closed) {
  if (points_.size() < 2) {
    throw std::invalid_argument("polyline needs at least 2 points");
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("polyline point " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && points_[i - 1] == p) {
      throw std::invalid_argument("polyline has repeated consecutive point at " +
                                  std::to_string(i));
    }
  }
  if (closed_ && points_.front() != points_.back()) {
    throw std::invalid_argument("closed polyline must end on its first point");
  }
}

Polyline Polyline::ring(std::vector<Point> points) {
  if (!points.empty() && points.front() != points.back()) {
    points.push_back(points.front());
  }
  return {std::move(points), true};
}

double point_to_line(Point q, Point a, Point b) {
  const Point ab = b - a;
  const double len = norm(ab);
  if (len == 0.0) {
    return distance(q, a);
  }
  return std::abs(cross(ab, q - a)) / len;
}

double point_to_segment(Point q, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return distance(q, a);
  }
  const double t = dot(q - a, ab) / len2;
  if (t <= 0.0) return distance(q, a);
  if (t >= 1.0) return distance(q, b);
  return std::abs(cross(ab, q - a)) / std::sqrt(len2);
}

double signed_area(const Polyline& ring) {
  if (!ring.closed()) {
    throw std::invalid_argument("signed_area requires a closed ring");
  }
  double twice = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    twice += cross(ring[i], ring[i + 1]);
  }
  return 0.5 * twice;
}

double arc_length(const Polyline& line) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    total += distance(line[i], line[i + 1]);
  }
  return total;
}

Polyline resample_uniform(const Polyline& line, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("resample step must be positive");
  }
  std::vector<double> cumulative(line.size(), 0.0);
  for (std::size_t i = 1; i < line.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + distance(line[i - 1], line[i]);
  }
  const double total = cumulative.back();
  if (total == 0.0) {
    throw std::invalid_argument("cannot resample a polyline of zero length");
  }

  // Samples closer than this to the end are absorbed into the endpoint.
  const double end_slack = 1e-9 * step;
  std::vector<Point> out{line.front()};
  std::size_t seg = 0;
  for (std::size_t n = 1;; ++n) {
    const double s = static_cast<double>(n) * step;
    if (s >= total - end_slack) break;
    while (seg + 2 < line.size() && cumulative[seg + 1] <= s) ++seg;
    const double seg_len = cumulative[seg + 1] - cumulative[seg];
    const double t = (s - cumulative[seg]) / seg_len;
    const Point a = line[seg];
    const Point b = line[seg + 1];
    out.push_back(t == 0.0 ? a : a + t * (b - a));
  }
  if (line.closed() && out.size() < 2) {
    throw std::invalid_argument("closed polyline is too short to resample at this step");
  }
  out.push_back(line.back());
  return {std::move(out), line.closed()};
}

Polyline downsample_to(const Polyline& line, std::size_t limit) {
  if (limit < 2) {
    throw std::invalid_argument("downsample limit must be >= 2");
  }
  const std::size_t n = line.size();
  if (n <= limit) return line;
  if (line.closed() && limit < 3) {
    throw std::invalid_argument("closed polyline needs a downsample limit >= 3");
  }
  std::vector<Point> out;
  out.reserve(limit);
  const std::size_t span = n - 1;
  const std::size_t parts = limit - 1;
  for (std::size_t i = 0; i < limit; ++i) {
    // round(i * span / parts), halves rounded up, in exact integer arithmetic
    const std::size_t idx = (2 * i * span + parts) / (2 * parts);
    out.push_back(line[idx]);
  }
  return {std::move(out), line.closed()};
}

Polyline reversed(const Polyline& line) {
  std::vector<Point> pts(line.points().rbegin(), line.points().rend());
  return {std::move(pts), line.closed()};
}

std::size_t distinct_vertex_count(const Polyline& line) {
  return line.closed() ? line.size() - 1 : line.size();
}

std::size_t distinct_vertex_count(const Polygon& polygon) {
  std::size_t n = distinct_vertex_count(polygon.exterior);
  for (const auto& hole : polygon.interiors) n += distinct_vertex_count(hole);
  return n;
}

}  // namespace gcpoly
