#include "fpiter/catalog.hpp"

#include <cmath>

namespace fpiter {

namespace {

MappingSpec sqrt_quadratic_map() {
  // S(c) = sqrt(c^2 - 6c + 30) on [1, 50]; fixed point 5
  NormedSpace space = NormedSpace::real_line();
  MappingSpec map{
      .space = space,
      .domain = Domain::interval(1.0, 50.0),
      .eval =
          [space](const Point& p) {
            double c = p[0];
            return space.make(std::sqrt(c * c - 6.0 * c + 30.0));
          },
      .lipschitz_class = LipschitzClass::Nonexpansive,
      .known_fixed_point = space.make(5.0),
  };
  return map;
}

MappingSpec scaling_map(double factor) {
  NormedSpace space = NormedSpace::real_line();
  MappingSpec map{
      .space = space,
      .domain = Domain::whole_space(),
      .eval = [space, factor](const Point& p) { return space.make(factor * p[0]); },
      .lipschitz_class = LipschitzClass::Contraction,
      .contraction_factor = factor,
      .known_fixed_point = space.make(0.0),
  };
  return map;
}

MappingSpec identity_map() {
  NormedSpace space = NormedSpace::real_line();
  MappingSpec map{
      .space = space,
      .domain = Domain::whole_space(),
      .eval = [](const Point& p) { return p; },
      .lipschitz_class = LipschitzClass::Nonexpansive,
      .known_fixed_point = space.make(0.0),
  };
  return map;
}

MappingSpec affine_2d_map() {
  // S(x) = x/2 + (1, 2); fixed point (2, 4)
  NormedSpace space = NormedSpace::euclidean(2);
  MappingSpec map{
      .space = space,
      .domain = Domain::whole_space(),
      .eval =
          [space](const Point& p) {
            return space.make({0.5 * p[0] + 1.0, 0.5 * p[1] + 2.0});
          },
      .lipschitz_class = LipschitzClass::Contraction,
      .contraction_factor = 0.5,
      .known_fixed_point = space.make({2.0, 4.0}),
  };
  return map;
}

IntegralProblem linear_1d_problem() {
  // exact solution p(t) = t on [0,1] with
  //   F(t,u,v,w) = u/4 + v/4 + w/4 + 3t/4 - t^2/8 - 1/8,  K = H = state
  IntegralProblem p;
  p.name = "mvf-linear-1d";
  p.box = {{0.0, 1.0}};
  p.F = [](std::span<const double> t, double u, double v, double w) {
    return 0.25 * u + 0.25 * v + 0.25 * w + 0.75 * t[0] -
           0.125 * t[0] * t[0] - 0.125;
  };
  p.K = [](std::span<const double>, std::span<const double>, double x) {
    return x;
  };
  p.H = p.K;
  p.alpha = p.beta = p.gamma = 0.25;
  p.lip_k = p.lip_h = 1.0;
  p.known_solution = [](std::span<const double> t) { return t[0]; };
  return p;
}

IntegralProblem exp_1d_problem() {
  // exact solution p(t) = e^t on [0,1]; the integrands have curvature, so
  // this one is the grid-refinement study problem
  IntegralProblem p;
  p.name = "mvf-exp-1d";
  p.box = {{0.0, 1.0}};
  const double e1 = std::exp(1.0);
  p.F = [e1](std::span<const double> t, double u, double v, double w) {
    return 0.25 * (u + v + w) + 0.25 * (2.0 * std::exp(t[0]) - e1 + 2.0);
  };
  p.K = [](std::span<const double>, std::span<const double>, double x) {
    return x;
  };
  p.H = p.K;
  p.alpha = p.beta = p.gamma = 0.25;
  p.lip_k = p.lip_h = 1.0;
  p.known_solution = [](std::span<const double> t) { return std::exp(t[0]); };
  return p;
}

IntegralProblem linear_2d_problem() {
  // exact solution p(t) = t1 t2 on [0,1]^2
  IntegralProblem p;
  p.name = "mvf-linear-2d";
  p.box = {{0.0, 1.0}, {0.0, 1.0}};
  p.F = [](std::span<const double> t, double u, double v, double w) {
    double tt = t[0] * t[1];
    return 0.25 * (u + v + w) + 0.75 * tt - tt * tt / 16.0 - 1.0 / 16.0;
  };
  p.K = [](std::span<const double>, std::span<const double>, double x) {
    return x;
  };
  p.H = p.K;
  p.alpha = p.beta = p.gamma = 0.25;
  p.lip_k = p.lip_h = 1.0;
  p.known_solution = [](std::span<const double> t) { return t[0] * t[1]; };
  return p;
}

IntegralProblem identity_1d_problem() {
  // A reduces to the identity; alpha = 1 puts it exactly on the contraction
  // boundary, so solve() refuses it — kept for operator-level checks
  IntegralProblem p;
  p.name = "mvf-identity-1d";
  p.box = {{0.0, 1.0}};
  p.F = [](std::span<const double>, double u, double, double) { return u; };
  p.K = [](std::span<const double>, std::span<const double>, double x) {
    return x;
  };
  p.H = p.K;
  p.alpha = 1.0;
  p.beta = p.gamma = 0.0;
  p.lip_k = p.lip_h = 1.0;
  return p;
}

}  // namespace

const std::vector<std::string>& map_catalog_keys() {
  static const std::vector<std::string> keys = {
      "sqrt-quadratic", "halving", "quartering", "identity", "affine-2d"};
  return keys;
}

MappingSpec make_map(const std::string& key) {
  if (key == "sqrt-quadratic") return sqrt_quadratic_map();
  if (key == "halving") return scaling_map(0.5);
  if (key == "quartering") return scaling_map(0.25);
  if (key == "identity") return identity_map();
  if (key == "affine-2d") return affine_2d_map();
  throw ParameterError("unknown map '" + key + "'");
}

const std::vector<std::string>& problem_catalog_keys() {
  static const std::vector<std::string> keys = {
      "mvf-linear-1d", "mvf-exp-1d", "mvf-linear-2d", "mvf-identity-1d"};
  return keys;
}

IntegralProblem make_problem(const std::string& key) {
  if (key == "mvf-linear-1d") return linear_1d_problem();
  if (key == "mvf-exp-1d") return exp_1d_problem();
  if (key == "mvf-linear-2d") return linear_2d_problem();
  if (key == "mvf-identity-1d") return identity_1d_problem();
  throw ParameterError("unknown problem '" + key + "'");
}

}  // namespace fpiter
