#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fpiter/quadrature.hpp"
#include "fpiter/schemes.hpp"

namespace fpiter {

/// Mixed-type functional integral equation on a box [g1,h1] x ... x [gm,hm]:
///
///   x(t) = F(t, x(t), I_V(t), I_F(t))
///   I_V(t) = integral of K(t,s,x(s)) over the leading sub-box [g, t]
///   I_F(t) = integral of H(t,s,x(s)) over the whole box
///
/// with Lipschitz data: |F(t,u1,v1,w1) - F(t,u2,v2,w2)| <= alpha|u1-u2| +
/// beta|v1-v2| + gamma|w1-w2|, and K, H Lipschitz in the state argument with
/// constants lip_k, lip_h.
struct IntegralProblem {
  using Outer =
      std::function<double(std::span<const double> t, double u, double v, double w)>;
  using Kernel = std::function<double(std::span<const double> t,
                                      std::span<const double> s, double x)>;
  using Solution = std::function<double(std::span<const double> t)>;

  std::string name;
  std::vector<std::array<double, 2>> box;
  Outer F;
  Kernel K;
  Kernel H;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double lip_k = 0.0;
  double lip_h = 0.0;
  Solution known_solution;  // null when the exact solution is unknown

  std::size_t dims() const { return box.size(); }
  double box_measure() const;
};

/// alpha + (beta lip_k + gamma lip_h) * prod(h_i - g_i). The whole-box
/// measure is used for both kernels, which is conservative for the
/// sub-box integral.
double contraction_constant(const IntegralProblem& problem);

/// Returns theta = contraction_constant(problem); throws
/// NotAContractionError when theta >= 1.
double certify_contraction(const IntegralProblem& problem);

struct CertificationReport {
  double theta = 0.0;
  /// Largest observed ||A(x)-A(y)|| / ||x-y|| over the sampled pairs.
  double max_ratio = 0.0;
  /// Pairs whose ratio exceeded theta plus the discretization slack.
  std::size_t violations = 0;
  bool warning = false;
  /// Additive slack: the discrete rule's Lipschitz excess over theta.
  double slack = 0.0;
};

/// Formula certificate plus an empirical spot-check of the discretized
/// operator over random grid-function pairs.
CertificationReport certify_contraction(const IntegralProblem& problem,
                                        const QuadratureGrid& grid,
                                        std::size_t n_pairs = 20,
                                        unsigned seed = 0x5eedu);

/// One application of the integral operator to nodal values c. Each target
/// node is independent; with n_threads > 1 the nodes are computed in
/// parallel, and results are bit-identical for every thread count.
std::vector<double> apply_A(const IntegralProblem& problem,
                            const QuadratureGrid& grid,
                            std::span<const double> c, unsigned n_threads = 1);

struct BoundPair {
  double product;      // e0 * prod_k (1 - d_k (1 - theta))
  double exponential;  // e0 * exp(-(1 - theta) * sum_k d_k)
};

/// Geometric error bounds after each schedule entry; the product entry never
/// exceeds the exponential one (1 - x <= exp(-x)). Requires theta in [0,1)
/// and every delta in [0,1].
std::vector<BoundPair> bound_56(double e0, double theta,
                                std::span<const double> deltas);

struct SolveOptions {
  double tol = 1e-8;
  std::size_t max_iters = 200;
  unsigned n_threads = 1;
};

struct SolveResult {
  std::vector<double> solution;  // nodal values of the final iterate
  Trajectory trajectory;         // over the grid space; residual = ||A(c)-c||
  double theta = 0.0;
  /// Product bound on ||c_n - p|| per recorded step (empty when the exact
  /// solution is unknown).
  std::vector<double> error_bounds;
  double achieved_residual = 0.0;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Drives the three-step scheme with S = apply_A on the grid space. Stops
/// once the residual (and, when the exact solution is known, the Chebyshev
/// error as well) drops to tol.
SolveResult solve(const IntegralProblem& problem, const QuadratureGrid& grid,
                  const ParamSchedule& schedule, std::span<const double> c0,
                  const SolveOptions& options = {});

}  // namespace fpiter
