#include <cmath>
#include <random>

#include <doctest.h>

#include "fpiter/catalog.hpp"
#include "fpiter/golden.hpp"
#include "fpiter/report.hpp"
#include "fpiter/schemes.hpp"

using namespace fpiter;

namespace {

MapFn counting(const MappingSpec& map, int& count) {
  return [&map, &count](const Point& p) {
    ++count;
    return map(p);
  };
}

}  // namespace

TEST_CASE("step_new matches the published second row") {
  MappingSpec map = make_map("sqrt-quadratic");
  Point next = step_new(map, real_point(40.0), 0.95);
  CHECK(next.as_scalar() == doctest::Approx(32.0516661514).epsilon(1e-11));
}

TEST_CASE("step_new on a linear map, by hand") {
  MappingSpec half = make_map("halving");
  // a = 4, b = 0.5*4 + 0.5*2 = 3, S(b) = 1.5
  CHECK(step_new(half, real_point(8.0), 0.5).as_scalar() == 1.5);
}

TEST_CASE("step_thakur matches the published second row") {
  MappingSpec map = make_map("sqrt-quadratic");
  Point next = step_thakur(map, real_point(40.0), 0.95, 0.30);
  CHECK(next.as_scalar() == doctest::Approx(33.826119187).epsilon(1e-11));
}

TEST_CASE("step_thakur on a linear map, by hand") {
  MappingSpec half = make_map("halving");
  // u = 6, v = S(7) = 3.5, S(v) = 1.75
  CHECK(step_thakur(half, real_point(8.0), 0.5, 0.5).as_scalar() == 1.75);
}

TEST_CASE("classical steps match the published second row") {
  MappingSpec map = make_map("sqrt-quadratic");
  Point x = real_point(40.0);
  CHECK(step_classical(SchemeId::Noor, map, x, 0.95, 0.30, 0.90).as_scalar() ==
        doctest::Approx(36.1407358454).epsilon(1e-11));
  CHECK(step_classical(SchemeId::Agarwal, map, x, 0.95, 0.30, 0.90)
            .as_scalar() == doctest::Approx(36.514581536).epsilon(1e-11));
  CHECK(step_classical(SchemeId::AbbasNazir, map, x, 0.95, 0.30, 0.90)
            .as_scalar() == doctest::Approx(34.6327094201).epsilon(1e-11));
}

TEST_CASE("step parameter validation") {
  MappingSpec half = make_map("halving");
  CHECK_THROWS_AS(step_new(half, real_point(1.0), 0.0), ParameterError);
  CHECK_THROWS_AS(step_new(half, real_point(1.0), 1.0), ParameterError);
  CHECK_THROWS_AS(step_thakur(half, real_point(1.0), 0.5, 1.0), ParameterError);
}

TEST_CASE("every scheme leaves a fixed point fixed") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> par(0.05, 0.95);
  for (const char* key : {"sqrt-quadratic", "halving", "affine-2d"}) {
    MappingSpec map = make_map(key);
    const Point& q = *map.known_fixed_point;
    MapFn S = [&map](const Point& p) { return map(p); };
    for (SchemeId id : kAllSchemes) {
      for (int i = 0; i < 5; ++i) {
        Point out = step(id, S, q, par(rng), par(rng), par(rng));
        CHECK(map.space.distance(out, q) <=
              4 * std::numeric_limits<double>::epsilon() * (1 + map.space.norm(q)));
      }
    }
  }
}

TEST_CASE("mapping evaluation counts per step") {
  MappingSpec map = make_map("sqrt-quadratic");
  Point x = real_point(12.0);
  for (SchemeId id : kAllSchemes) {
    int count = 0;
    step(id, counting(map, count), x, 0.5, 0.5, 0.5);
    CHECK(count == mapping_evals_per_step(id));
  }
}

TEST_CASE("sequence rules stay inside the open unit interval") {
  CHECK_THROWS_AS(SequenceRule::constant(0.0), ParameterError);
  CHECK_THROWS_AS(SequenceRule::constant(1.0), ParameterError);
  CHECK_THROWS_AS(SequenceRule::tabulated({0.5, 1.5}), ParameterError);
  CHECK_THROWS_AS(SequenceRule::tabulated({}), ParameterError);

  SequenceRule tab = SequenceRule::tabulated({0.1, 0.2, 0.3});
  CHECK(tab.at(1) == 0.1);
  CHECK(tab.at(3) == 0.3);
  CHECK(tab.at(10) == 0.3);  // final-value extension
  CHECK_THROWS_AS(tab.at(0), ParameterError);
}

TEST_CASE("run stops immediately from the fixed point") {
  MappingSpec map = make_map("sqrt-quadratic");
  ParamSchedule sched = ParamSchedule::constants(0.95, 0.30, 0.90);
  Trajectory tr = run(SchemeId::NewIter, map, real_point(5.0), sched,
                      {1e-10, 50});
  CHECK(tr.steps() == 1);
  CHECK(tr.stop_reason == StopReason::ToleranceMet);
  CHECK(tr.residuals.size() == 1);
  CHECK(tr.errors.has_value());
  CHECK(tr.errors->size() == 1);
}

TEST_CASE("picard on the halving map needs eleven steps for 1e-3") {
  MappingSpec half = make_map("halving");
  ParamSchedule sched = ParamSchedule::constants(0.5, 0.5, 0.5);
  Trajectory tr =
      run(SchemeId::Picard, half, real_point(1.0), sched, {1e-3, 100});
  CHECK(tr.stop_reason == StopReason::ToleranceMet);
  CHECK(tr.steps() == 11);  // 2^-10 < 1e-3
  CHECK(tr.mapping_evals == 2 * 11 - 1);  // one residual per step, one move
}

TEST_CASE("run reaches the benchmark fixed point on the published row") {
  MappingSpec map = make_map("sqrt-quadratic");
  ParamSchedule sched = ParamSchedule::constants(0.95, 0.30, 0.90);
  Trajectory tr = run(SchemeId::NewIter, map, real_point(40.0), sched,
                      {5e-12, 100});
  CHECK(tr.stop_reason == StopReason::ToleranceMet);
  CHECK(tr.steps() == 17);
  CHECK(format_fixed(tr.iterates.back().as_scalar(), 10) == "5.0000000000");
}

TEST_CASE("run flags divergence and keeps the finite prefix") {
  NormedSpace space = NormedSpace::real_line();
  MappingSpec squaring{
      .space = space,
      .domain = Domain::whole_space(),
      .eval = [space](const Point& p) { return space.make(p[0] * p[0]); },
  };
  ParamSchedule sched = ParamSchedule::constants(0.5, 0.5, 0.5);
  Trajectory tr =
      run(SchemeId::Picard, squaring, real_point(2.0), sched, {1e-10, 1000});
  CHECK(tr.stop_reason == StopReason::Diverged);
  CHECK(tr.steps() >= 2);
  CHECK(tr.steps() < 20);
  for (const Point& p : tr.iterates) CHECK(p.finite());
  CHECK(tr.residuals.size() == tr.steps());
}

TEST_CASE("run validates the stop rule") {
  MappingSpec half = make_map("halving");
  ParamSchedule sched = ParamSchedule::constants(0.5, 0.5, 0.5);
  CHECK_THROWS_AS(run(SchemeId::Picard, half, real_point(1.0), sched, {0.0, 10}),
                  ParameterError);
  CHECK_THROWS_AS(run(SchemeId::Picard, half, real_point(1.0), sched, {1e-3, 0}),
                  ParameterError);
}

TEST_CASE("new-scheme errors are Fejer monotone on the benchmark map") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> start(1.0, 50.0);
  std::uniform_real_distribution<double> par(0.05, 0.95);
  MappingSpec map = make_map("sqrt-quadratic");
  for (int i = 0; i < 25; ++i) {
    ParamSchedule sched =
        ParamSchedule::constants(par(rng), par(rng), par(rng));
    Trajectory tr = run(SchemeId::NewIter, map, real_point(start(rng)), sched,
                        {1e-300, 40});
    const auto& errs = *tr.errors;
    for (std::size_t n = 1; n < errs.size(); ++n) {
      CHECK(errs[n] <= errs[n - 1] + 1e-12);
    }
  }
}

TEST_CASE("scheme names round-trip") {
  for (SchemeId id : kAllSchemes) {
    CHECK(scheme_from_string(to_string(id)) == id);
  }
  CHECK(scheme_from_string("abbas") == SchemeId::AbbasNazir);
  CHECK(scheme_from_string("new-iter") == SchemeId::NewIter);
  CHECK(!scheme_from_string("nope"));
}
