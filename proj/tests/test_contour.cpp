#include <doctest.h>

#include <random>

#include "gcpoly/contour.hpp"
#include "gcpoly/metrics.hpp"
#include "oracles.hpp"

using namespace gcpoly;

namespace {

RasterMask from_rows(const std::vector<std::string>& rows) {
  RasterMask m(rows.front().size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c] == '#');
  }
  return m;
}

void check_round_trip(const RasterMask& m) {
  const Polygon poly = trace_contours(m);
  CHECK(signed_area(poly.exterior) > 0.0);
  for (const auto& hole : poly.interiors) CHECK(signed_area(hole) < 0.0);
  const Polygon polys[] = {poly};
  CHECK(rasterize(polys, {m.width(), m.height(), 1}) == m);
  CHECK(oracle::paint(poly, m.width(), m.height()) == m);
}

}  // namespace

TEST_CASE("largest_component") {
  const RasterMask one = from_rows({"....", ".##.", ".##.", "...."});
  CHECK(largest_component(one) == one);

  const RasterMask two = from_rows({"###..", "##...", "....#", "...##"});
  const RasterMask kept = largest_component(two);
  CHECK(kept.count() == 5);
  CHECK(kept.at(0, 0));
  CHECK_FALSE(kept.at(3, 4));

  const RasterMask tie = from_rows({"...##", "...##", "##...", "##..."});
  const auto comps = oracle::components(tie);
  REQUIRE(comps.size() == 2);
  const auto& first = comps[0].first < comps[1].first ? comps[0] : comps[1];
  const RasterMask winner = largest_component(tie);
  CHECK(winner.count() == 4);
  for (std::size_t px : first.pixels) CHECK(winner.values()[px] == 1);

  CHECK_THROWS_AS(largest_component(RasterMask(3, 3)), std::invalid_argument);
}

TEST_CASE("largest_component matches flood-fill oracle") {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution on(0.45);
  for (int t = 0; t < 100; ++t) {
    RasterMask m(12, 9);
    for (std::size_t r = 0; r < 9; ++r) {
      for (std::size_t c = 0; c < 12; ++c) m.set(r, c, on(rng));
    }
    if (m.count() == 0) continue;
    const auto comps = oracle::components(m);
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
      if (comps[i].size > comps[best].size ||
          (comps[i].size == comps[best].size && comps[i].first < comps[best].first)) {
        best = i;
      }
    }
    RasterMask expect(12, 9);
    for (std::size_t px : comps[best].pixels) expect.set(px / 12, px % 12, true);
    CHECK(largest_component(m) == expect);
  }
}

TEST_CASE("trace_contours examples") {
  RasterMask pixel(5, 4);
  pixel.set(2, 3, true);
  const Polygon unit = trace_contours(pixel);
  CHECK(unit.interiors.empty());
  CHECK(distinct_vertex_count(unit.exterior) == 4);
  CHECK(signed_area(unit.exterior) == doctest::Approx(1.0));
  for (const Point& p : unit.exterior.points()) {
    CHECK((p.x == 3 || p.x == 4));
    CHECK((p.y == 2 || p.y == 3));
  }

  const Polygon sq = trace_contours(from_rows({".....", ".###.", ".###.", ".###.", "....."}));
  CHECK(distinct_vertex_count(sq.exterior) == 4);
  CHECK(signed_area(sq.exterior) == doctest::Approx(9.0));

  const RasterMask ring = from_rows({"#####", "#####", "##.##", "#####", "#####"});
  const Polygon holed = trace_contours(ring);
  REQUIRE(holed.interiors.size() == 1);
  CHECK(distinct_vertex_count(holed.interiors[0]) == 4);
  CHECK(signed_area(holed.interiors[0]) == doctest::Approx(-1.0));
  CHECK(signed_area(holed.exterior) == doctest::Approx(25.0));
  check_round_trip(ring);

  CHECK_THROWS_AS(trace_contours(RasterMask(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(trace_contours(from_rows({"#.#"})), std::invalid_argument);
}

TEST_CASE("trace_contours handles diagonal contacts") {
  // background pixels touching only at a corner form one 8-connected hole
  check_round_trip(from_rows({"#####", "#.###", "##.##", "#####"}));
  // foreground touching a hole diagonally
  check_round_trip(from_rows({"######", "#..###", "#.#.##", "###..#", "######"}));
  check_round_trip(from_rows({".#.", "###", ".#."}));
}

TEST_CASE("trace_contours round trip on random blobs") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    check_round_trip(oracle::random_blob(rng, 14, 11, 20 + static_cast<std::size_t>(t)));
  }
}

TEST_CASE("segment_windows shapes") {
  std::vector<Point> pts;
  for (int i = 0; i < 127; ++i) pts.push_back({static_cast<double>(i), 0.25 * (i % 2)});
  const Polyline line127 = Polyline::open(pts);
  const Polyline line64 = Polyline::open({pts.begin(), pts.begin() + 64});

  const Polyline one[] = {line64};
  const WindowedPolylines w1 = segment_windows(one, 64);
  CHECK(w1.count() == 1);
  CHECK(w1.valid_len[0] == 64);

  const Polyline two[] = {line127};
  const WindowedPolylines w2 = segment_windows(two, 64);
  REQUIRE(w2.count() == 2);
  CHECK(w2.points(0)[63] == pts[63]);
  CHECK(w2.points(1)[0] == pts[63]);
  CHECK(w2.valid_len[1] == 64);

  std::vector<Point> ring;
  for (int i = 0; i < 99; ++i) ring.push_back({std::cos(i * 0.0634), std::sin(i * 0.0634)});
  const Polyline closed[] = {Polyline::ring(ring)};
  REQUIRE(closed[0].size() == 100);
  const WindowedPolylines w3 = segment_windows(closed, 64);
  REQUIRE(w3.count() == 2);
  CHECK_FALSE(w3.origin[0].wraps);
  CHECK(w3.origin[1].wraps);
  CHECK(w3.origin[1].start == 63);
  // the wrapping window continues past the seam into the leading points
  CHECK(w3.points(1)[37] == ring[1]);
  CHECK(reassemble(w3)[0] == closed[0]);

  const Polyline shortl[] = {Polyline::open({{0, 0}, {1, 0}, {2, 1}})};
  const WindowedPolylines w4 = segment_windows(shortl, 8);
  CHECK(w4.valid_len[0] == 3);
  for (std::size_t i = 3; i < 8; ++i) CHECK(w4.points(0)[i] == Point{2, 1});

  CHECK_THROWS_AS(segment_windows(one, 1), std::invalid_argument);
}

TEST_CASE("reassemble averages shared points") {
  const Polyline lines[] = {Polyline::open({{0, 0}, {0.5, 0.5}, {1, 1}})};
  WindowedPolylines w = segment_windows(lines, 2);
  REQUIRE(w.count() == 2);
  w.points(0)[1] = {1, 0};
  w.points(1)[0] = {0, 1};
  const auto out = reassemble(w);
  CHECK(out[0][1] == Point{0.5, 0.5});

  WindowedPolylines bad = segment_windows(lines, 2);
  bad.origin[1].source = 3;
  CHECK_THROWS_AS(reassemble(bad), std::invalid_argument);
  WindowedPolylines gap = segment_windows(lines, 2);
  gap.origin.pop_back();
  gap.valid_len.pop_back();
  gap.coords.resize(2);
  CHECK_THROWS_AS(reassemble(gap), std::invalid_argument);
}

TEST_CASE("reassemble of jittered closed rings keeps lengths") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-5, 5), jitter(-0.01, 0.01);
  std::uniform_int_distribution<int> len(4, 60);
  for (int t = 0; t < 30; ++t) {
    std::vector<Point> pts;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
    const Polyline rings[] = {Polyline::ring(pts), Polyline::open(pts)};
    WindowedPolylines w = segment_windows(rings, 16);
    for (std::size_t k = 0; k < w.count(); ++k) {
      for (auto& p : w.points(k)) p = p + Point{jitter(rng), jitter(rng)};
    }
    const auto out = reassemble(w);
    REQUIRE(out.size() == 2);
    CHECK(out[0].size() == rings[0].size());
    CHECK(out[0].closed());
    CHECK(out[1].size() == rings[1].size());
    CHECK_FALSE(out[1].closed());
  }
}
