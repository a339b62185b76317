#include <doctest.h>

#include <random>

#include "gcpoly/simplify.hpp"
#include "oracles.hpp"

using namespace gcpoly;

namespace {

const Polyline corner = Polyline::open({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}});

using Idx = std::vector<std::size_t>;

Polyline random_line(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<Point> pts;
  while (pts.size() < n) pts.push_back({u(rng), u(rng)});
  return Polyline::open(pts);
}

}  // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS(gcp_simplify(corner, {-1.0, 64}), std::invalid_argument);
  CHECK_THROWS_AS(gcp_simplify(corner, {1.0, 1}), std::invalid_argument);
}

TEST_CASE("build_distance_matrix") {
  const SquareMatrix d = build_distance_matrix(Polyline::open({{0, 0}, {1, 1}, {2, 0}}), 64);
  CHECK(d(0, 1) == 0.0);
  CHECK(d(1, 2) == 0.0);
  CHECK(d(0, 2) == doctest::Approx(1.0));

  const Polyline col = Polyline::open({{0, 0}, {1, 2}, {2, 4}, {3, 6}, {5, 10}});
  const SquareMatrix z = build_distance_matrix(col, 64);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) CHECK(z(i, j) == doctest::Approx(0.0));
  }

  std::mt19937_64 rng(1);
  const Polyline p = random_line(rng, 12);
  const SquareMatrix band = build_distance_matrix(p, 4);
  std::vector<Point> pts(p.points().begin(), p.points().end());
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j < 12; ++j) {
      if (j - i <= 4) {
        CHECK(band(i, j) == doctest::Approx(oracle::selection_distance(pts, {i, j})));
      } else {
        CHECK(band(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("workspace tables") {
  const DpWorkspace ws = solve_workspace(corner, {0.5, 64});
  for (std::size_t i = 0; i < 5; ++i) CHECK(ws.best(i, i) == 0.0);
  for (std::size_t i = 0; i + 1 < 5; ++i) {
    CHECK(ws.cost(i, i + 1) == doctest::Approx(0.5));
    CHECK(ws.next(i, 4) > i);
  }
  // L(0, T-1) charges lambda per edge: two edges here
  CHECK(ws.best(0, 4) == doctest::Approx(1.0));
}

TEST_CASE("gcp_simplify examples") {
  const Selection two = gcp_simplify(Polyline::open({{0, 0}, {3, 1}}), {});
  CHECK(two.indices == Idx{0, 1});
  CHECK(two.distance_sum == 0.0);

  const Polyline col = Polyline::open({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
  const Selection line = gcp_simplify(col, {1.0, 64});
  CHECK(line.indices == Idx{0, 4});
  CHECK(line.total_cost == doctest::Approx(2.0));

  const Selection c = gcp_simplify(corner, {0.5, 64});
  CHECK(c.indices == Idx{0, 2, 4});
  CHECK(c.distance_sum == doctest::Approx(0.0));
  CHECK(c.total_cost == doctest::Approx(1.5));
  CHECK(brute_force_simplify(corner, {0.5, 64}).indices == c.indices);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const Polyline p = random_line(rng, 30);
    CHECK(gcp_simplify(p, {0.0, 64}).vertex_count() == 30);
  }
}

TEST_CASE("k_max bounds every gap") {
  const Polyline col = Polyline::open({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}});
  const Selection s = gcp_simplify(col, {1.0, 3});
  CHECK(s.indices == Idx{0, 3, 6});
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const Polyline p = random_line(rng, 40);
    const Selection sel = gcp_simplify(p, {50.0, 5});
    for (std::size_t i = 0; i + 1 < sel.indices.size(); ++i) {
      CHECK(sel.indices[i + 1] - sel.indices[i] <= 5);
    }
  }
}

TEST_CASE("gcp_simplify agrees with brute force") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> len(2, 12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = len(rng);
    const Polyline p = random_line(rng, n);
    for (double lambda : {0.0, 1.0, 3.0, 20.0}) {
      for (std::size_t k : {std::size_t{2}, std::size_t{4}, n}) {
        if (k < 2) continue;
        const Selection a = gcp_simplify(p, {lambda, k});
        const Selection b = brute_force_simplify(p, {lambda, k});
        CHECK(a.indices == b.indices);
        CHECK(std::abs(a.total_cost - b.total_cost) < 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(brute_force_simplify(random_line(rng, 21), {}), std::invalid_argument);
  CHECK(brute_force_simplify(Polyline::open({{0, 0}, {1, 1}}), {}).indices == Idx{0, 1});
  const Selection all = brute_force_simplify(random_line(rng, 4), {0.0, 64});
  CHECK(all.indices == Idx{0, 1, 2, 3});
  CHECK(all.distance_sum == 0.0);
}

TEST_CASE("tie-breaking prefers fewer vertices then lexicographic order") {
  const Polyline sq = Polyline::open({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  // dropping either middle vertex costs 1/sqrt(2); both plans tie
  CHECK(gcp_simplify(sq, {1.0, 64}).indices == Idx{0, 1, 3});
  CHECK(brute_force_simplify(sq, {1.0, 64}).indices == Idx{0, 1, 3});
  // {0,3} costs 2 + 2 lambda against 1/sqrt(2) + 3 lambda: tied at 2 - 1/sqrt(2)
  const double swing = 2.0 - 1.0 / std::sqrt(2.0);
  CHECK(gcp_simplify(sq, {swing, 64}).indices == Idx{0, 3});
  const Polyline sym = Polyline::open({{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 0}});
  for (double lambda : {0.5, 1.0, 1.4142135623730951}) {
    CHECK(gcp_simplify(sym, {lambda, 64}).indices ==
          brute_force_simplify(sym, {lambda, 64}).indices);
  }
}

TEST_CASE("closed rings keep the seam vertex") {
  const Polyline ring =
      Polyline::ring({{0, 0}, {2, 0}, {4, 0}, {4, 2}, {4, 4}, {2, 4}, {0, 4}, {0, 2}});
  const Selection s = gcp_simplify(ring, {1.0, 64});
  CHECK(s.indices.front() == 0);
  CHECK(s.indices.back() == ring.size() - 1);
  CHECK(s.indices == Idx{0, 2, 4, 6, 8});
  const auto pts = selected_points(ring, s);
  CHECK(pts.front() == pts.back());
}

TEST_CASE("douglas_peucker") {
  const Polyline col = Polyline::open({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK(douglas_peucker(col, 0.1).indices == Idx{0, 3});
  CHECK(douglas_peucker(corner, 0.5).indices == Idx{0, 2, 4});
  std::mt19937_64 rng(6);
  const Polyline p = random_line(rng, 25);
  CHECK(douglas_peucker(p, 0.0).vertex_count() == 25);
  const Selection scored = douglas_peucker(corner, 0.5, 2.0);
  CHECK(scored.total_cost == doctest::Approx(6.0));
  // (3,0) lies on the chord's line but 2 px past the segment end
  const Polyline hook = Polyline::open({{0, 0}, {3, 0}, {1, 0}});
  CHECK(douglas_peucker(hook, 0.5).indices == Idx{0, 1, 2});
}

TEST_CASE("objective_value") {
  const ObjectiveValue full = objective_value(corner, Idx{0, 1, 2, 3, 4}, 1.5);
  CHECK(full.distance_sum == 0.0);
  CHECK(full.total == doctest::Approx(7.5));
  const ObjectiveValue ends = objective_value(corner, Idx{0, 4}, 1.0);
  std::vector<Point> pts(corner.points().begin(), corner.points().end());
  CHECK(ends.distance_sum == doctest::Approx(oracle::selection_distance(pts, {0, 4})));
  CHECK(ends.distance_sum == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(ends.total == doctest::Approx(2.0 * std::sqrt(2.0) + 2.0));
  CHECK_THROWS_AS(objective_value(corner, Idx{0, 2, 2, 4}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(objective_value(corner, Idx{0, 5}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(objective_value(corner, Idx{1, 4}, 1.0), std::invalid_argument);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const Polyline p = random_line(rng, 60);
    const Selection s = gcp_simplify(p, {3.0, 16});
    CHECK(std::abs(objective_value(p, s, 3.0).total - s.total_cost) < 1e-9);
  }
}

TEST_CASE("optimal objective does not increase with k_max") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 30; ++t) {
    const Polyline p = random_line(rng, 50);
    double prev = 1e300;
    for (std::size_t k : {2, 3, 5, 8, 13, 49, 64}) {
      const double total = gcp_simplify(p, {4.0, k}).total_cost;
      CHECK(total <= prev + 1e-9);
      prev = total;
    }
  }
}
