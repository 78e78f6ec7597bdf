#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "fpiter/catalog.hpp"
#include "fpiter/space.hpp"

using namespace fpiter;

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

TEST_CASE("convex_combine endpoint and interior values") {
  Point u = real_point(2.0);
  Point v = real_point(6.0);
  CHECK(convex_combine(u, v, 0.0).as_scalar() == 2.0);
  CHECK(convex_combine(u, v, 1.0).as_scalar() == 6.0);

  double root = std::sqrt(1390.0);
  Point a = real_point(40.0);
  Point b = real_point(root);
  double expected = 0.05 * 40.0 + 0.95 * root;
  CHECK(convex_combine(a, b, 0.95).as_scalar() ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("convex_combine rejects bad inputs") {
  Point u = real_point(1.0);
  Point v = real_point(2.0);
  CHECK_THROWS_AS(convex_combine(u, v, -0.1), ParameterError);
  CHECK_THROWS_AS(convex_combine(u, v, 1.1), ParameterError);

  Point w = NormedSpace::euclidean(2).make({1.0, 2.0});
  CHECK_THROWS_AS(convex_combine(u, w, 0.5), SpaceMismatchError);
}

TEST_CASE("convex_combine is exact on equal points and stays in the envelope") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> val(-50.0, 50.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  NormedSpace space = NormedSpace::euclidean(3);
  for (int i = 0; i < 200; ++i) {
    Point u = space.make({val(rng), val(rng), val(rng)});
    double t = weight(rng);
    Point same = convex_combine(u, u, t);
    for (std::size_t k = 0; k < 3; ++k) CHECK(same[k] == u[k]);

    Point v = space.make({val(rng), val(rng), val(rng)});
    Point mix = convex_combine(u, v, t);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(mix[k] >= std::min(u[k], v[k]));
      CHECK(mix[k] <= std::max(u[k], v[k]));
    }
  }
}

TEST_CASE("norms of the three space kinds") {
  CHECK(NormedSpace::real_line().norm(real_point(-3.0)) == 3.0);

  NormedSpace e2 = NormedSpace::euclidean(2);
  CHECK(e2.norm(e2.make({3.0, 4.0})) == 5.0);

  NormedSpace grid = NormedSpace::chebyshev_grid({{0.0, 0.5, 1.0}});
  CHECK(grid.norm(grid.make({1.0, -4.0, 2.0})) == 4.0);

  CHECK(grid.norm(grid.zero()) == 0.0);
  CHECK_THROWS_AS(e2.norm(real_point(1.0)), SpaceMismatchError);
}

TEST_CASE("norm homogeneity and triangle inequality on random samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  std::uniform_real_distribution<double> lam(-5.0, 5.0);

  std::vector<NormedSpace> spaces = {
      NormedSpace::real_line(), NormedSpace::euclidean(5),
      NormedSpace::chebyshev_grid({{0.0, 0.5, 1.0}, {0.0, 1.0}})};
  for (const NormedSpace& space : spaces) {
    for (int i = 0; i < 100; ++i) {
      std::vector<double> a(space.dim()), b(space.dim());
      for (auto& x : a) x = val(rng);
      for (auto& x : b) x = val(rng);
      Point u = space.make(a);
      Point v = space.make(b);

      double l = lam(rng);
      double lhs = space.norm(scale(l, u));
      double rhs = std::abs(l) * space.norm(u);
      CHECK(std::abs(lhs - rhs) <= 4 * kEps * std::max(lhs, rhs));

      double nu = space.norm(u), nv = space.norm(v);
      CHECK(space.norm(add(u, v)) <= nu + nv + kEps * (nu + nv));
    }
  }
}

TEST_CASE("convex combination respects norm convexity") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> val(-10.0, 10.0);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  NormedSpace space = NormedSpace::euclidean(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(4), b(4), c(4);
    for (auto& x : a) x = val(rng);
    for (auto& x : b) x = val(rng);
    for (auto& x : c) x = val(rng);
    Point u = space.make(a), v = space.make(b), q = space.make(c);
    double t = weight(rng);
    double lhs = space.distance(convex_combine(u, v, t), q);
    double rhs =
        (1.0 - t) * space.distance(u, q) + t * space.distance(v, q) + 1e-12;
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("mapping evaluation enforces the domain") {
  NormedSpace space = NormedSpace::real_line();
  MappingSpec escaping{
      .space = space,
      .domain = Domain::interval(0.0, 1.0),
      .eval = [space](const Point& p) { return space.make(p[0] + 100.0); },
  };
  CHECK_THROWS_AS(escaping(space.make(0.5)), DomainViolationError);
  CHECK_THROWS_AS(escaping(space.make(7.0)), DomainViolationError);

  try {
    escaping(space.make(0.5));
  } catch (const DomainViolationError& e) {
    REQUIRE(e.offending_point().size() == 1);
    CHECK(e.offending_point()[0] == doctest::Approx(100.5));
  }

  // box-face roundoff is absorbed by the membership tolerance
  MappingSpec clamped{
      .space = space,
      .domain = Domain::interval(0.0, 1.0),
      .eval = [space](const Point&) { return space.make(1.0 + 1e-13); },
  };
  CHECK_NOTHROW(clamped(space.make(0.5)));
}

TEST_CASE("spot_check_lipschitz on the benchmark map") {
  MappingSpec map = make_map("sqrt-quadratic");
  std::vector<std::pair<Point, Point>> pairs = {
      {real_point(10.0), real_point(20.0)},
      {real_point(5.0), real_point(40.0)},
      {real_point(1.0), real_point(50.0)},
  };
  LipschitzReport rep = spot_check_lipschitz(map, pairs);
  CHECK(rep.max_ratio < 1.0);
  CHECK(rep.max_ratio > 0.8);
  CHECK(rep.violations == 0);
  CHECK(rep.pairs_used == 3);
}

TEST_CASE("spot_check_lipschitz identity and linear maps") {
  MappingSpec identity = make_map("identity");
  std::vector<std::pair<Point, Point>> pairs = {
      {real_point(0.0), real_point(3.0)},
      {real_point(-2.0), real_point(9.0)},
  };
  LipschitzReport rep = spot_check_lipschitz(identity, pairs);
  CHECK(rep.max_ratio == 1.0);
  CHECK(rep.violations == 0);

  MappingSpec half = make_map("halving");
  std::vector<std::pair<Point, Point>> one = {
      {real_point(0.0), real_point(8.0)}};
  rep = spot_check_lipschitz(half, one);
  CHECK(rep.max_ratio == 0.5);
  CHECK(rep.violations == 0);
}

TEST_CASE("spot_check_lipschitz edge cases") {
  MappingSpec half = make_map("halving");
  std::vector<std::pair<Point, Point>> empty;
  CHECK_THROWS_AS(spot_check_lipschitz(half, empty), ParameterError);

  std::vector<std::pair<Point, Point>> degenerate = {
      {real_point(4.0), real_point(4.0)},
      {real_point(0.0), real_point(8.0)},
  };
  LipschitzReport rep = spot_check_lipschitz(half, degenerate);
  CHECK(rep.pairs_used == 1);  // the equal pair is skipped
}
