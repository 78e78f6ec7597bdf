#include "fpiter/volterra_fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

namespace fpiter {

double IntegralProblem::box_measure() const {
  double m = 1.0;
  for (const auto& [g, h] : box) m *= (h - g);
  return m;
}

double contraction_constant(const IntegralProblem& problem) {
  if (problem.box.empty()) throw ParameterError("problem box is empty");
  if (problem.alpha < 0 || problem.beta < 0 || problem.gamma < 0 ||
      problem.lip_k < 0 || problem.lip_h < 0) {
    throw ParameterError("Lipschitz constants must be nonnegative");
  }
  return problem.alpha +
         (problem.beta * problem.lip_k + problem.gamma * problem.lip_h) *
             problem.box_measure();
}

double certify_contraction(const IntegralProblem& problem) {
  double theta = contraction_constant(problem);
  if (!(theta < 1.0)) throw NotAContractionError(theta);
  return theta;
}

namespace {

void check_grid_matches(const IntegralProblem& problem,
                        const QuadratureGrid& grid) {
  if (grid.dims() != problem.dims()) {
    throw ParameterError("grid dimension does not match the problem box");
  }
  for (std::size_t ax = 0; ax < grid.dims(); ++ax) {
    if (std::abs(grid.box()[ax][0] - problem.box[ax][0]) > 1e-12 ||
        std::abs(grid.box()[ax][1] - problem.box[ax][1]) > 1e-12) {
      throw ParameterError("grid box does not match the problem box");
    }
  }
}

void apply_node_range(const IntegralProblem& problem,
                      const QuadratureGrid& grid, std::span<const double> c,
                      std::size_t begin, std::size_t end,
                      std::span<double> out) {
  const std::size_t m = grid.dims();
  const std::size_t total = grid.total_nodes();
  std::vector<std::size_t> tidx(m);
  std::vector<double> t(m), s(m);

  for (std::size_t tau = begin; tau < end; ++tau) {
    grid.unflatten(tau, tidx);
    grid.node_coords(tau, t);

    double volterra = 0.0;
    double fredholm = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
      grid.node_coords(flat, s);
      // sub-box weight: product of per-axis subrange rows cut at t
      double wv = 1.0;
      std::size_t rest = flat;
      for (std::size_t ax = m; ax-- > 0;) {
        std::size_t n = grid.axis_nodes(ax);
        std::size_t j = rest % n;
        rest /= n;
        wv *= grid.volterra_axis_weights(ax, tidx[ax])[j];
        if (wv == 0.0) break;
      }
      if (wv != 0.0) volterra += wv * problem.K(t, s, c[flat]);
      double wf = grid.tensor_weight(flat);
      fredholm += wf * problem.H(t, s, c[flat]);
    }

    double value = problem.F(t, c[tau], volterra, fredholm);
    if (!std::isfinite(value) || !std::isfinite(volterra) ||
        !std::isfinite(fredholm)) {
      throw EvaluationError("non-finite operator value at a grid node", t);
    }
    out[tau] = value;
  }
}

}  // namespace

std::vector<double> apply_A(const IntegralProblem& problem,
                            const QuadratureGrid& grid,
                            std::span<const double> c, unsigned n_threads) {
  check_grid_matches(problem, grid);
  if (c.size() != grid.total_nodes()) {
    throw ParameterError("nodal value count does not match the grid");
  }

  std::vector<double> out(grid.total_nodes());
  const std::size_t total = grid.total_nodes();

  if (n_threads <= 1 || total < 2 * n_threads) {
    apply_node_range(problem, grid, c, 0, total, out);
    return out;
  }

  //each node value depends only on c; partition targets across workers
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(n_threads);
  const std::size_t chunk = (total + n_threads - 1) / n_threads;
  for (unsigned w = 0; w < n_threads; ++w) {
    std::size_t begin = std::min<std::size_t>(w * chunk, total);
    std::size_t end = std::min<std::size_t>(begin + chunk, total);
    workers.emplace_back([&, w, begin, end]() {
      try {
        apply_node_range(problem, grid, c, begin, end, out);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : workers) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

CertificationReport certify_contraction(const IntegralProblem& problem,
                                        const QuadratureGrid& grid,
                                        std::size_t n_pairs, unsigned seed) {
  CertificationReport rep;
  rep.theta = certify_contraction(problem);
  check_grid_matches(problem, grid);

  // Lipschitz constant of the discrete operator: the sub-box rows may carry
  // slightly more absolute weight than the box measure used in theta.
  double max_abs_vol = 0.0;
  for (std::size_t ax = 0; ax < grid.dims(); ++ax) {
    double axis_max = 0.0;
    for (std::size_t k = 0; k < grid.axis_nodes(ax); ++k) {
      double s = 0.0;
      for (double w : grid.volterra_axis_weights(ax, k)) s += std::abs(w);
      axis_max = std::max(axis_max, s);
    }
    max_abs_vol = (ax == 0) ? axis_max : max_abs_vol * axis_max;
  }
  double theta_disc = problem.alpha +
                      problem.beta * problem.lip_k * max_abs_vol +
                      problem.gamma * problem.lip_h * problem.box_measure();
  rep.slack = std::max(0.0, theta_disc - rep.theta) + 1e-12;

  NormedSpace space = grid.space();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&]() {
    std::vector<double> v(grid.total_nodes());
    for (double& x : v) x = unit(rng);
    return v;
  };
  for (std::size_t i = 0; i < n_pairs; ++i) {
    std::vector<double> x = draw();
    std::vector<double> y = draw();
    Point px = space.make(x);
    Point py = space.make(y);
    double d = space.distance(px, py);
    if (d == 0.0) continue;
    Point ax = space.make(apply_A(problem, grid, x));
    Point ay = space.make(apply_A(problem, grid, y));
    double ratio = space.distance(ax, ay) / d;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > rep.theta + rep.slack) ++rep.violations;
  }
  rep.warning = rep.violations > 0;
  return rep;
}

std::vector<BoundPair> bound_56(double e0, double theta,
                                std::span<const double> deltas) {
  if (theta < 0.0) throw ParameterError("theta must be >= 0");
  if (theta >= 1.0) throw NotAContractionError(theta);
  if (e0 < 0.0) throw ParameterError("initial error must be >= 0");
  std::vector<BoundPair> out;
  out.reserve(deltas.size());
  double product = e0;
  double delta_sum = 0.0;
  for (double d : deltas) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw ParameterError("schedule entries must lie in [0,1]");
    }
    product *= 1.0 - d * (1.0 - theta);
    delta_sum += d;
    out.push_back({product, e0 * std::exp(-(1.0 - theta) * delta_sum)});
  }
  return out;
}

SolveResult solve(const IntegralProblem& problem, const QuadratureGrid& grid,
                  const ParamSchedule& schedule, std::span<const double> c0,
                  const SolveOptions& options) {
  SolveResult result;
  result.theta = certify_contraction(problem);
  check_grid_matches(problem, grid);
  if (c0.size() != grid.total_nodes()) {
    throw ParameterError("initial iterate does not match the grid");
  }
  if (!(options.tol > 0.0)) throw ParameterError("tolerance must be > 0");
  if (options.max_iters < 1) throw ParameterError("max_iters must be >= 1");

  // convergence needs a divergent delta sum; a decaying tabulated tail is
  // suspicious but not fatal
  std::size_t len = schedule.delta.table_size();
  if (len > 1 && schedule.delta.final_value() <
                     1.0 / (static_cast<double>(len) * static_cast<double>(len))) {
    result.warnings.push_back(
        "delta schedule tail looks summable; the iteration may stall");
  }

  NormedSpace space = grid.space();
  std::size_t evals = 0;
  MapFn S = [&](const Point& p) {
    ++evals;
    return space.make(apply_A(problem, grid, p.values(), options.n_threads));
  };

  bool has_exact = static_cast<bool>(problem.known_solution);
  Point exact = space.zero();
  if (has_exact) exact = space.make(grid.sample(problem.known_solution));

  Trajectory& tr = result.trajectory;
  tr.scheme = SchemeId::NewIter;
  if (has_exact) tr.errors.emplace();

  Point x = space.make(std::vector<double>(c0.begin(), c0.end()));
  double e0 = has_exact ? space.distance(x, exact) : 0.0;
  double bound = e0;

  for (std::size_t n = 1;; ++n) {
    double res = space.distance(S(x), x);
    tr.iterates.push_back(x);
    tr.residuals.push_back(res);
    double err = 0.0;
    if (has_exact) {
      err = space.distance(x, exact);
      tr.errors->push_back(err);
      result.error_bounds.push_back(bound);
      bound *= 1.0 - schedule.delta.at(n) * (1.0 - result.theta);
    }
    if (!std::isfinite(res) || (has_exact && !std::isfinite(err))) {
      tr.stop_reason = StopReason::Diverged;
      break;
    }
    bool done = res <= options.tol && (!has_exact || err <= options.tol);
    if (done) {
      tr.stop_reason = StopReason::ToleranceMet;
      break;
    }
    if (n == options.max_iters) {
      tr.stop_reason = StopReason::MaxIters;
      break;
    }
    Point next = step_new(S, x, schedule.delta.at(n));
    if (!next.finite()) {
      tr.stop_reason = StopReason::Diverged;
      break;
    }
    x = std::move(next);
  }

  tr.mapping_evals = evals;
  result.solution = tr.iterates.back().values();
  result.achieved_residual = tr.residuals.back();
  result.converged = tr.stop_reason == StopReason::ToleranceMet;
  return result;
}

}  // namespace fpiter
