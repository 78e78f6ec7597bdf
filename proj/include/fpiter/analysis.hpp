#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "fpiter/schemes.hpp"

namespace fpiter {

/// Closed-form geometric error bound e1 * factor^n for a contraction with
/// factor xi driven by one of the two three-step schemes.
struct RateBound {
  SchemeId scheme = SchemeId::NewIter;
  double xi = 0.0;
  double delta = 0.0;
  double zeta = 1.0;  // unused by the new scheme
  double initial_error = 0.0;
  double per_step_factor = 0.0;

  double bound_at(std::size_t n) const;

  static RateBound new_scheme(double xi, double delta, double initial_error);
  static RateBound thakur_scheme(double xi, double delta, double zeta,
                                 double initial_error);
};

/// xi^(2n) * (1 - (1-xi) delta)^n * e1
double bound_new(double xi, double delta, double e1, std::size_t n);

/// xi^(2n) * (1 - (1-xi) delta zeta)^n * e1; zeta may equal 1, where the
/// bound coincides with bound_new.
double bound_thakur(double xi, double delta, double zeta, double e1,
                    std::size_t n);

/// bound_new / bound_thakur, evaluated in log space so large n does not
/// underflow. Requires e1_thakur > 0.
double theoretical_ratio(double xi, double delta, double zeta, double e1_new,
                         double e1_thakur, std::size_t n);

enum class Verdict { AFaster, BFaster, Inconclusive };

std::string_view to_string(Verdict v);

struct CompareOptions {
  /// Fraction of the valid ratio entries that forms the decision tail.
  double tail_fraction = 0.25;
  /// The tail must sit below this threshold (above its reciprocal for the
  /// symmetric verdict) to call one scheme faster.
  double threshold = 0.5;
  /// Entries stop once either error drops below this floor.
  double error_floor = 1e-15;
};

struct ComparisonReport {
  SchemeId scheme_a = SchemeId::NewIter;
  SchemeId scheme_b = SchemeId::Thakur;
  std::vector<double> ratio_sequence;  // ||a_n - q|| / ||b_n - q||
  Verdict verdict = Verdict::Inconclusive;

  /// 1-based index of the first ratio entry below eps.
  std::optional<std::size_t> first_n_below(double eps) const;
};

/// Ratio diagnostics for two trajectories converging to the same point q.
/// The verdict calls a faster when the tail of the ratio sequence sits below
/// the threshold and keeps decreasing (symmetrically for b).
ComparisonReport empirical_compare(const Trajectory& a, const Trajectory& b,
                                   const Point& q,
                                   const CompareOptions& options = {});

/// Certified contraction-factor estimate for a mapping on an interval-box
/// domain: the max difference ratio over a fine sample grid, inflated by 1%
/// but kept below 1. Throws ParameterError when the samples are not
/// contractive.
double estimate_contraction_factor(const MappingSpec& map,
                                   std::size_t grid_points = 512);

}  // namespace fpiter
