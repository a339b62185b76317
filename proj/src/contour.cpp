#include "gcpoly/contour.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>

namespace gcpoly {

RasterMask::RasterMask(std::size_t width, std::size_t height)
    : RasterMask(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

RasterMask::RasterMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (width_ == 0 || height_ == 0) {
    throw std::invalid_argument("mask dimensions must be positive");
  }
  if (values_.size() != width_ * height_) {
    throw std::invalid_argument("mask value count does not match dimensions");
  }
  for (auto v : values_) {
    if (v > 1) throw std::invalid_argument("mask values must be 0 or 1");
  }
}

std::size_t RasterMask::count() const {
  return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

namespace {

struct Components {
  std::vector<int> label;          // -1 for background
  std::vector<std::size_t> sizes;  // indexed by label, labels assigned in scan order
};

Components label_components(const RasterMask& mask) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  Components out{std::vector<int>(w * h, -1), {}};
  std::deque<std::size_t> queue;
  for (std::size_t seed = 0; seed < w * h; ++seed) {
    if (mask.values()[seed] == 0 || out.label[seed] != -1) continue;
    const int id = static_cast<int>(out.sizes.size());
    std::size_t size = 0;
    out.label[seed] = id;
    queue.push_back(seed);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      ++size;
      const std::size_t r = cur / w;
      const std::size_t c = cur % w;
      const auto visit = [&](std::size_t idx) {
        if (mask.values()[idx] != 0 && out.label[idx] == -1) {
          out.label[idx] = id;
          queue.push_back(idx);
        }
      };
      if (r > 0) visit(cur - w);
      if (r + 1 < h) visit(cur + w);
      if (c > 0) visit(cur - 1);
      if (c + 1 < w) visit(cur + 1);
    }
    out.sizes.push_back(size);
  }
  return out;
}

struct BoundaryEdge {
  long x0, y0, x1, y1;
  std::size_t pixel;
};

}  // namespace

RasterMask largest_component(const RasterMask& mask) {
  const Components comps = label_components(mask);
  if (comps.sizes.empty()) {
    throw std::invalid_argument("mask has no foreground pixel");
  }
  int best = 0;
  for (std::size_t i = 1; i < comps.sizes.size(); ++i) {
    if (comps.sizes[i] > comps.sizes[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  std::vector<std::uint8_t> values(comps.label.size(), 0);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = comps.label[i] == best ? 1 : 0;
  return {mask.width(), mask.height(), std::move(values)};
}

Polygon trace_contours(const RasterMask& mask) {
  const Components comps = label_components(mask);
  if (comps.sizes.empty()) {
    throw std::invalid_argument("cannot trace an empty mask");
  }
  if (comps.sizes.size() > 1) {
    throw std::invalid_argument("mask has " + std::to_string(comps.sizes.size()) +
                                " components; select one first");
  }

  const long w = static_cast<long>(mask.width());
  const long h = static_cast<long>(mask.height());
  const auto fg = [&](long r, long c) {
    return r >= 0 && c >= 0 && r < h && c < w &&
           mask.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  };
  const auto vertex_id = [&](long x, long y) { return static_cast<std::size_t>(y * (w + 1) + x); };

  // Directed boundary edges oriented so that the exterior has positive area.
  // A lattice vertex has at most two outgoing edges (two at a diagonal saddle).
  std::vector<BoundaryEdge> edges;
  std::vector<std::array<long, 2>> outgoing(static_cast<std::size_t>((w + 1) * (h + 1)), {-1, -1});
  const auto add = [&](long x0, long y0, long x1, long y1, std::size_t pixel) {
    auto& slot = outgoing[vertex_id(x0, y0)];
    (slot[0] == -1 ? slot[0] : slot[1]) = static_cast<long>(edges.size());
    edges.push_back({x0, y0, x1, y1, pixel});
  };
  for (long r = 0; r < h; ++r) {
    for (long c = 0; c < w; ++c) {
      if (!fg(r, c)) continue;
      const auto pixel = static_cast<std::size_t>(r * w + c);
      if (!fg(r - 1, c)) add(c, r, c + 1, r, pixel);
      if (!fg(r, c + 1)) add(c + 1, r, c + 1, r + 1, pixel);
      if (!fg(r + 1, c)) add(c + 1, r + 1, c, r + 1, pixel);
      if (!fg(r, c - 1)) add(c, r + 1, c, r, pixel);
    }
  }

  std::vector<bool> used(edges.size(), false);
  std::optional<Polyline> exterior;
  std::size_t exterior_count = 0;
  std::vector<Polyline> holes;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (used[start]) continue;
    std::vector<Point> loop;
    std::size_t e = start;
    do {
      used[e] = true;
      const BoundaryEdge& cur = edges[e];
      loop.push_back({static_cast<double>(cur.x0), static_cast<double>(cur.y0)});
      const auto& slot = outgoing[vertex_id(cur.x1, cur.y1)];
      long next = slot[0];
      // At a saddle keep following the same pixel so diagonal foreground
      // pixels stay separated (4-connected foreground, 8-connected background).
      if (slot[1] != -1 && edges[static_cast<std::size_t>(slot[0])].pixel != cur.pixel) {
        next = slot[1];
      }
      e = static_cast<std::size_t>(next);
    } while (e != start);

    // Keep only vertices where the direction changes, starting from a corner.
    const std::size_t n = loop.size();
    const auto dir = [&](std::size_t k) { return loop[(k + 1) % n] - loop[k]; };
    std::vector<Point> corners;
    std::size_t first = 0;
    while (dir((first + n - 1) % n) == dir(first)) ++first;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = (first + k) % n;
      if (dir((idx + n - 1) % n) != dir(idx)) corners.push_back(loop[idx]);
    }
    Polyline ring = Polyline::ring(std::move(corners));
    if (signed_area(ring) > 0.0) {
      ++exterior_count;
      exterior = std::move(ring);
    } else {
      holes.push_back(std::move(ring));
    }
  }
  if (exterior_count != 1) {
    throw std::logic_error("contour tracing produced " + std::to_string(exterior_count) +
                           " exterior rings");
  }
  return {std::move(*exterior), std::move(holes)};
}

WindowedPolylines segment_windows(std::span<const Polyline> lines, std::size_t window) {
  if (window < 2) {
    throw std::invalid_argument("window size must be >= 2");
  }
  WindowedPolylines out;
  out.window = window;
  for (std::size_t s = 0; s < lines.size(); ++s) {
    const Polyline& line = lines[s];
    const std::size_t len = line.size();
    out.sources.push_back({len, line.closed()});
    const std::size_t stride = window - 1;
    const std::size_t n_windows = (len - 1 + stride - 1) / stride;
    // Distinct points of a closed ring; position q maps to q % period.
    const std::size_t period = line.closed() ? len - 1 : len;
    for (std::size_t k = 0; k < n_windows; ++k) {
      const std::size_t start = k * stride;
      std::size_t valid = std::min(window, len - start);
      if (line.closed() && k + 1 == n_windows) {
        valid = std::min(window, period + 1);
      }
      out.origin.push_back({s, start, start + valid > len});
      out.valid_len.push_back(valid);
      for (std::size_t i = 0; i < window; ++i) {
        const std::size_t q = start + std::min(i, valid - 1);
        out.coords.push_back(line[line.closed() ? q % period : q]);
      }
    }
  }
  return out;
}

std::vector<Polyline> reassemble(const WindowedPolylines& windows) {
  const std::size_t m = windows.count();
  if (windows.window < 2 || windows.valid_len.size() != m ||
      windows.coords.size() != m * windows.window) {
    throw std::invalid_argument("windowed polylines have inconsistent shapes");
  }
  std::vector<std::vector<Point>> sums;
  std::vector<std::vector<std::size_t>> copies;
  for (const auto& src : windows.sources) {
    if (src.length < 2) throw std::invalid_argument("window source shorter than 2 points");
    const std::size_t period = src.closed ? src.length - 1 : src.length;
    sums.emplace_back(period, Point{});
    copies.emplace_back(period, 0);
  }
  for (std::size_t k = 0; k < m; ++k) {
    const WindowOrigin& o = windows.origin[k];
    const std::size_t valid = windows.valid_len[k];
    if (o.source >= windows.sources.size() || valid < 2 || valid > windows.window) {
      throw std::invalid_argument("window " + std::to_string(k) + " has an invalid origin");
    }
    const WindowSource& src = windows.sources[o.source];
    const std::size_t period = src.closed ? src.length - 1 : src.length;
    if (!src.closed && o.start + valid > src.length) {
      throw std::invalid_argument("window " + std::to_string(k) + " runs past an open source");
    }
    if (o.wraps != (o.start + valid > src.length)) {
      throw std::invalid_argument("window " + std::to_string(k) + " has a wrong wrap flag");
    }
    const auto pts = windows.points(k);
    for (std::size_t i = 0; i < valid; ++i) {
      const std::size_t idx = (o.start + i) % period;
      sums[o.source][idx] = sums[o.source][idx] + pts[i];
      ++copies[o.source][idx];
    }
  }
  std::vector<Polyline> out;
  for (std::size_t s = 0; s < windows.sources.size(); ++s) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < sums[s].size(); ++i) {
      if (copies[s][i] == 0) {
        throw std::invalid_argument("source " + std::to_string(s) + " point " + std::to_string(i) +
                                    " is not covered by any window");
      }
      const auto n = static_cast<double>(copies[s][i]);
      pts.push_back({sums[s][i].x / n, sums[s][i].y / n});
    }
    if (windows.sources[s].closed) {
      out.push_back(Polyline::ring(std::move(pts)));
    } else {
      out.emplace_back(std::move(pts), false);
    }
  }
  return out;
}

}  // namespace gcpoly
