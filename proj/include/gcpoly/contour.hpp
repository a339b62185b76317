#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gcpoly/geometry.hpp"

namespace gcpoly {

/// H x W binary grid, row-major. Pixel (row, col) covers [col, col+1] x [row, row+1].
class RasterMask {
 public:
  RasterMask(std::size_t width, std::size_t height);
  /// `values` must hold width*height entries, each 0 or 1.
  RasterMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> values);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  bool at(std::size_t row, std::size_t col) const { return values_[row * width_ + col] != 0; }
  void set(std::size_t row, std::size_t col, bool on) { values_[row * width_ + col] = on ? 1 : 0; }
  std::span<const std::uint8_t> values() const { return values_; }
  std::size_t count() const;

  friend bool operator==(const RasterMask&, const RasterMask&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> values_;
};

/// Keeps the 4-connected foreground component with the most pixels. Ties go
/// to the component whose first pixel comes earliest in row-major order.
RasterMask largest_component(const RasterMask& mask);

/// Traces a single 4-connected component into a polygon on pixel corners.
/// The exterior ring has positive signed area, holes negative; only corner
/// vertices are kept. Throws on an empty mask or more than one component.
Polygon trace_contours(const RasterMask& mask);

struct WindowOrigin {
  std::size_t source = 0;  // index into the input polyline list
  std::size_t start = 0;   // index of the window's first point in its source
  bool wraps = false;      // closed source whose window runs past the seam
};

struct WindowSource {
  std::size_t length = 0;
  bool closed = false;
};

/// Fixed-size polyline windows: M windows of K points each, stored flat.
struct WindowedPolylines {
  std::size_t window = 0;
  std::vector<Point> coords;  // M * window
  std::vector<std::size_t> valid_len;
  std::vector<WindowOrigin> origin;
  std::vector<WindowSource> sources;

  std::size_t count() const { return origin.size(); }
  std::span<Point> points(std::size_t m) { return {coords.data() + m * window, window}; }
  std::span<const Point> points(std::size_t m) const {
    return {coords.data() + m * window, window};
  }
};

/// Cuts each polyline into ceil((L-1)/(K-1)) windows of K points, consecutive
/// windows sharing one point. Closed sources fill their last window by
/// wrapping past the seam; short windows are padded with their last point.
WindowedPolylines segment_windows(std::span<const Polyline> lines, std::size_t window);

/// Inverse of segment_windows; copies of the same source point are averaged.
std::vector<Polyline> reassemble(const WindowedPolylines& windows);

}  // namespace gcpoly
