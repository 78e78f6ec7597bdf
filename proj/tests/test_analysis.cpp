#include <cmath>
#include <random>

#include <doctest.h>

#include "fpiter/analysis.hpp"
#include "fpiter/catalog.hpp"

using namespace fpiter;

TEST_CASE("bound_new closed-form values") {
  CHECK(bound_new(0.5, 0.5, 1.0, 1) == doctest::Approx(0.1875).epsilon(1e-15));
  CHECK(bound_new(0.3, 0.7, 0.0, 5) == 0.0);
  CHECK(bound_new(0.3, 0.7, 2.5, 0) == 2.5);
  CHECK_THROWS_AS(bound_new(1.0, 0.5, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(bound_new(0.5, 0.0, 1.0, 1), ParameterError);
}

TEST_CASE("bound_thakur closed-form values and the zeta=1 boundary") {
  CHECK(bound_thakur(0.5, 0.5, 0.5, 1.0, 1) ==
        doctest::Approx(0.21875).epsilon(1e-15));
  CHECK(bound_thakur(0.5, 0.5, 0.5, 0.0, 3) == 0.0);
  for (std::size_t n : {0u, 1u, 5u, 20u}) {
    CHECK(bound_thakur(0.4, 0.6, 1.0, 2.0, n) ==
          doctest::Approx(bound_new(0.4, 0.6, 2.0, n)).epsilon(1e-14));
  }
}

TEST_CASE("the new-scheme bound never exceeds the thakur bound") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> par(0.01, 0.99);
  for (int i = 0; i < 300; ++i) {
    double xi = par(rng), d = par(rng), z = par(rng);
    double e1 = 10.0 * par(rng);
    for (std::size_t n : {1u, 2u, 10u, 50u}) {
      CHECK(bound_new(xi, d, e1, n) <= bound_thakur(xi, d, z, e1, n) * (1 + 1e-13));
    }
  }
}

TEST_CASE("theoretical_ratio value, monotonicity, and boundary") {
  CHECK(theoretical_ratio(0.5, 0.5, 0.5, 1.0, 1.0, 1) ==
        doctest::Approx(0.75 / 0.875).epsilon(1e-14));

  // strictly decreasing toward zero whenever zeta < 1
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> par(0.05, 0.95);
  for (int i = 0; i < 100; ++i) {
    double xi = par(rng), d = par(rng), z = par(rng);
    double prev = theoretical_ratio(xi, d, z, 1.0, 1.0, 1);
    CHECK(prev > 0.0);
    for (std::size_t n = 2; n <= 50; ++n) {
      double cur = theoretical_ratio(xi, d, z, 1.0, 1.0, n);
      CHECK(cur > 0.0);
      CHECK(cur < prev);
      prev = cur;
    }
  }

  // zeta = 1 freezes the ratio at e1_new / e1_thakur
  for (std::size_t n : {1u, 7u, 100u}) {
    CHECK(theoretical_ratio(0.5, 0.5, 1.0, 3.0, 2.0, n) ==
          doctest::Approx(1.5).epsilon(1e-13));
  }
}

TEST_CASE("theoretical_ratio stays finite deep into underflow territory") {
  // direct pow would underflow both bounds to zero near n ~ 2000
  double r = theoretical_ratio(0.5, 0.5, 0.5, 1.0, 1.0, 5000);
  CHECK(r > 0.0);
  CHECK(r < 1e-300);
  CHECK_THROWS_AS(theoretical_ratio(0.5, 0.5, 0.5, 1.0, 0.0, 1),
                  ParameterError);
  CHECK(theoretical_ratio(0.5, 0.5, 0.5, 0.0, 1.0, 1) == 0.0);
}

TEST_CASE("observed trajectories respect the closed-form bound") {
  // the halving map attains the new-scheme bound exactly
  MappingSpec half = make_map("halving");
  ParamSchedule sched = ParamSchedule::constants(0.95, 0.3, 0.9);
  Trajectory tr =
      run(SchemeId::NewIter, half, real_point(1.0), sched, {1e-14, 60});
  const auto& errs = *tr.errors;
  for (std::size_t n = 0; n + 1 < errs.size(); ++n) {
    CHECK(errs[n + 1] <= bound_new(0.5, 0.95, errs[0], n + 1) + 1e-10);
  }

  // estimated certificate for the benchmark map
  MappingSpec bench = make_map("sqrt-quadratic");
  double xi = estimate_contraction_factor(bench);
  CHECK(xi > 0.99);
  CHECK(xi < 1.0);
  Trajectory tb =
      run(SchemeId::NewIter, bench, real_point(40.0), sched, {5e-12, 100});
  const auto& be = *tb.errors;
  for (std::size_t n = 0; n + 1 < be.size(); ++n) {
    CHECK(be[n + 1] <= bound_new(xi, 0.95, be[0], n + 1) + 1e-10);
  }
}

TEST_CASE("estimate_contraction_factor on exactly known maps") {
  double xi = estimate_contraction_factor(make_map("sqrt-quadratic"));
  CHECK(xi == doctest::Approx(0.9976).epsilon(1e-3));

  MappingSpec half = make_map("halving");
  MappingSpec boxed{
      .space = half.space,
      .domain = Domain::interval(-4.0, 4.0),
      .eval = half.eval,
  };
  CHECK(estimate_contraction_factor(boxed) ==
        doctest::Approx(0.505).epsilon(1e-6));

  MappingSpec identity = make_map("identity");
  MappingSpec boxed_id{
      .space = identity.space,
      .domain = Domain::interval(0.0, 1.0),
      .eval = identity.eval,
  };
  CHECK_THROWS_AS(estimate_contraction_factor(boxed_id), ParameterError);
  CHECK_THROWS_AS(estimate_contraction_factor(identity), ParameterError);
}

TEST_CASE("empirical_compare prefers the faster trajectory") {
  MappingSpec map = make_map("sqrt-quadratic");
  ParamSchedule sched = ParamSchedule::constants(0.95, 0.30, 0.90);
  StopRule stop{5e-12, 100};
  Trajectory tn = run(SchemeId::NewIter, map, real_point(40.0), sched, stop);
  Trajectory tt = run(SchemeId::Thakur, map, real_point(40.0), sched, stop);

  ComparisonReport rep = empirical_compare(tn, tt, *map.known_fixed_point);
  CHECK(rep.verdict == Verdict::AFaster);
  CHECK(!rep.ratio_sequence.empty());
  CHECK(rep.first_n_below(1e-3).has_value());

  ComparisonReport rev = empirical_compare(tt, tn, *map.known_fixed_point);
  CHECK(rev.verdict == Verdict::BFaster);
}

TEST_CASE("empirical_compare is inconclusive on identical trajectories") {
  MappingSpec map = make_map("sqrt-quadratic");
  ParamSchedule sched = ParamSchedule::constants(0.95, 0.30, 0.90);
  Trajectory tr = run(SchemeId::Thakur, map, real_point(40.0), sched,
                      {5e-12, 100});
  ComparisonReport rep = empirical_compare(tr, tr, *map.known_fixed_point);
  CHECK(rep.verdict == Verdict::Inconclusive);
  for (double r : rep.ratio_sequence) CHECK(r == 1.0);
}

TEST_CASE("empirical_compare via closed-form geometric trajectories") {
  MappingSpec half = make_map("halving");
  MappingSpec quarter = make_map("quartering");
  ParamSchedule sched = ParamSchedule::constants(0.5, 0.5, 0.5);
  StopRule stop{1e-13, 40};
  Trajectory th = run(SchemeId::Picard, half, real_point(1.0), sched, stop);
  Trajectory tq = run(SchemeId::Picard, quarter, real_point(1.0), sched, stop);
  ComparisonReport rep =
      empirical_compare(th, tq, *half.known_fixed_point);
  CHECK(rep.verdict == Verdict::BFaster);

  Point wrong_space = NormedSpace::euclidean(2).make({0.0, 0.0});
  CHECK_THROWS_AS(empirical_compare(th, tq, wrong_space), SpaceMismatchError);
}
