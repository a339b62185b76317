#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gcpoly/assignment.hpp"
#include "gcpoly/losses.hpp"
#include "oracles.hpp"

using namespace gcpoly;

namespace {

double smooth_l1(double d, double beta) {
  d = std::abs(d);
  return d < beta ? 0.5 * d * d / beta : d - 0.5 * beta;
}

// Unsigned angle at v, in [0, pi].
double vertex_angle(Point u, Point v, Point w) {
  const Point a = u - v, b = w - v;
  return std::acos(std::clamp(dot(a, b) / (norm(a) * norm(b)), -1.0, 1.0));
}

}  // namespace

TEST_CASE("solve_assignment against permutations") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0, 10);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int t = 0; t < 30; ++t) {
      std::vector<double> cost(n * n);
      for (double& c : cost) c = u(rng);
      const auto assign = solve_assignment(cost, n, n);
      double total = 0.0;
      std::vector<bool> used(n, false);
      for (std::size_t r = 0; r < n; ++r) {
        REQUIRE(assign[r].has_value());
        CHECK_FALSE(used[*assign[r]]);
        used[*assign[r]] = true;
        total += cost[r * n + *assign[r]];
      }
      CHECK(total == doctest::Approx(oracle::best_permutation_cost(cost, n)));
    }
  }
}

TEST_CASE("solve_assignment rectangular") {
  const std::vector<double> wide = {5, 1, 9, 2, 8, 0};  // 2 x 3
  const auto a = solve_assignment(wide, 2, 3);
  CHECK(a[0] == std::optional<std::size_t>{1});
  CHECK(a[1] == std::optional<std::size_t>{2});
  const std::vector<double> tall = {5, 1, 9, 2, 8, 0};  // 3 x 2
  const auto b = solve_assignment(tall, 3, 2);
  CHECK(b[0] == std::optional<std::size_t>{0});
  CHECK_FALSE(b[1].has_value());
  CHECK(b[2] == std::optional<std::size_t>{1});
}

TEST_CASE("hungarian_match") {
  const std::vector<Point> pts = {{0, 0}, {5, 5}, {9, 1}};
  const Matching same = hungarian_match(pts, pts);
  REQUIRE(same.pairs.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(same.pairs[i] == MatchPair{i, i});

  const std::vector<Point> pred = {{0, 0}, {100, 0}};
  const std::vector<Point> gt = {{1, 0}};
  const Matching m = hungarian_match(pred, gt, 15);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0] == MatchPair{0, 0});

  // greedy nearest-neighbour would pair 0->0; the optimum crosses
  const std::vector<Point> p3 = {{0, 0}, {1, 0}, {10, 0}};
  const std::vector<Point> g3 = {{0.6, 0}, {-2, 0}, {11, 0}};
  const Matching cross = hungarian_match(p3, g3, 100);
  std::vector<double> cost(9);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) cost[i * 3 + j] = distance(p3[i], g3[j]);
  }
  double total = 0.0;
  for (const auto& pr : cross.pairs) total += distance(p3[pr.pred], g3[pr.gt]);
  CHECK(total == doctest::Approx(oracle::best_permutation_cost(cost, 3)));
  CHECK(cross.pairs[0] == MatchPair{0, 1});

  // pairs at or beyond the threshold are dropped
  const Matching far = hungarian_match(std::vector<Point>{{0, 0}}, std::vector<Point>{{15, 0}});
  CHECK(far.pairs.empty());
}

TEST_CASE("vertex_loss") {
  const std::vector<Point> a = {{1, 2}, {3, 4}};
  CHECK(vertex_loss(a, a) == 0.0);
  CHECK(vertex_loss(std::vector<Point>{{1, 0}}, std::vector<Point>{{0, 0}}) ==
        doctest::Approx(0.25));
  CHECK(vertex_loss(std::vector<Point>{}, std::vector<Point>{}) == 0.0);
  CHECK_THROWS_AS(vertex_loss(a, std::vector<Point>{{0, 0}}), std::invalid_argument);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 50; ++t) {
    std::vector<Point> p, g;
    for (int i = 0; i < 7; ++i) {
      p.push_back({u(rng), u(rng)});
      g.push_back({u(rng), u(rng)});
    }
    const double beta = 0.5 + t * 0.05;
    double ref = 0.0;
    for (int i = 0; i < 7; ++i) {
      ref += smooth_l1(p[i].x - g[i].x, beta) + smooth_l1(p[i].y - g[i].y, beta);
    }
    CHECK(vertex_loss(p, g, beta) == doctest::Approx(ref / 14.0));
    const Point shift{u(rng), u(rng)};
    for (auto& q : p) q = q + shift;
    for (auto& q : g) q = q + shift;
    CHECK(vertex_loss(p, g, beta) == doctest::Approx(ref / 14.0));
  }
}

TEST_CASE("angular_loss") {
  const std::vector<Point> a = {{0, 0}, {1, 0}, {2, 1}, {2, 3}};
  CHECK(angular_loss(a, a) == 0.0);
  const std::vector<Point> straight = {{0, 0}, {1, 0}, {2, 0}};
  const std::vector<Point> right = {{0, 0}, {1, 0}, {1, 1}};
  CHECK(angular_loss(straight, right) == doctest::Approx(std::numbers::pi / 2));
  CHECK(angular_loss(std::vector<Point>{{0, 0}, {1, 1}}, std::vector<Point>{{0, 0}, {5, 1}}) ==
        0.0);

  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 50; ++t) {
    std::vector<Point> p, g;
    for (int i = 0; i < 5; ++i) {
      p.push_back({u(rng), u(rng)});
      g.push_back({u(rng), u(rng)});
    }
    // Same-side turns compare as interior angles; opposite turns as reflex ones.
    double ref = 0.0;
    for (int i = 0; i + 2 < 5; ++i) {
      const double tp = cross(p[i + 1] - p[i], p[i + 2] - p[i + 1]);
      const double tg = cross(g[i + 1] - g[i], g[i + 2] - g[i + 1]);
      const double ap = vertex_angle(p[i], p[i + 1], p[i + 2]);
      const double ag = vertex_angle(g[i], g[i + 1], g[i + 2]);
      const double diff = (tp >= 0) == (tg >= 0) ? std::abs(ap - ag)
                                                 : std::min(2 * std::numbers::pi - ap - ag,
                                                            ap + ag);
      ref = std::max(ref, std::min(diff, std::numbers::pi));
    }
    const double got = angular_loss(p, g);
    CHECK(got == doctest::Approx(ref).epsilon(1e-9));
    CHECK(got >= 0.0);
    CHECK(got <= std::numbers::pi);
  }
}

TEST_CASE("collinearity_loss") {
  const Polyline col = Polyline::open({{0, 0}, {1, 1}, {2, 2}, {4, 4}});
  Selection ends;
  ends.indices = {0, 3};
  CHECK(collinearity_loss(col, ends) == doctest::Approx(0.0));
  for (const auto& g : collinearity_loss_grad(col, ends)) CHECK(g == Point{0, 0});

  const Polyline corner = Polyline::open({{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}});
  Selection c_ends;
  c_ends.indices = {0, 4};
  CHECK(collinearity_loss(corner, c_ends) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(collinearity_loss(corner, gcp_simplify(corner, {0.5, 64})) == doctest::Approx(0.0));

  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0, 20);
  for (int t = 0; t < 20; ++t) {
    std::vector<Point> pts;
    for (int i = 0; i < 9; ++i) pts.push_back({u(rng), u(rng)});
    Selection all;
    for (std::size_t i = 0; i < 9; ++i) all.indices.push_back(i);
    CHECK(collinearity_loss(Polyline::open(pts), all) == 0.0);
  }
}

TEST_CASE("collinearity_loss_grad") {
  Selection ends;
  ends.indices = {0, 2};
  // q = (0,1) over the chord (0,0)-(2,0)
  const Polyline chord = Polyline::open({{0, 0}, {0, 1}, {2, 0}});
  const auto gq = collinearity_loss_grad(chord, ends);
  CHECK(gq[1].x == doctest::Approx(0.0));
  CHECK(gq[1].y == doctest::Approx(1.0));
  CHECK(gq[0].x + gq[2].x == doctest::Approx(0.0));
  CHECK(gq[0].y + gq[2].y == doctest::Approx(-1.0));

  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0, 10);
  int checked = 0;
  while (checked < 30) {
    std::vector<Point> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({u(rng), u(rng)});
    const Polyline line = Polyline::open(pts);
    Selection sel;
    sel.indices = {0, 3, 4, 9};
    if (oracle::min_summand(pts, sel.indices) <= 1e-3) continue;
    const auto analytic = collinearity_loss_grad(line, sel);
    CHECK(collinearity_loss(line, sel) ==
          doctest::Approx(oracle::selection_distance(pts, sel.indices)));
    const auto numeric = oracle::numeric_gradient(
        [&](const std::vector<Point>& q) { return oracle::selection_distance(q, sel.indices); },
        pts, 1e-6);
    Point total{0, 0};
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(std::abs(analytic[i].x - numeric[i].x) < 1e-5 * std::max(1.0, std::abs(numeric[i].x)));
      CHECK(std::abs(analytic[i].y - numeric[i].y) < 1e-5 * std::max(1.0, std::abs(numeric[i].y)));
      total = total + analytic[i];
    }
    CHECK(std::abs(total.x) < 1e-8);
    CHECK(std::abs(total.y) < 1e-8);
    ++checked;
  }
}
