#include "fpiter/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace fpiter {

namespace {

void require_in(double v, double lo_excl, double hi_incl, const char* name,
                bool hi_open) {
  bool ok = v > lo_excl && (hi_open ? v < hi_incl : v <= hi_incl);
  if (!ok) {
    throw ParameterError(std::string(name) + " = " + std::to_string(v) +
                         " outside the valid range");
  }
}

}  // namespace

double RateBound::bound_at(std::size_t n) const {
  return initial_error * std::pow(per_step_factor, static_cast<double>(n));
}

RateBound RateBound::new_scheme(double xi, double delta, double initial_error) {
  require_in(xi, 0.0, 1.0, "xi", true);
  require_in(delta, 0.0, 1.0, "delta", true);
  if (initial_error < 0) throw ParameterError("initial error must be >= 0");
  RateBound b;
  b.scheme = SchemeId::NewIter;
  b.xi = xi;
  b.delta = delta;
  b.initial_error = initial_error;
  b.per_step_factor = xi * xi * (1.0 - (1.0 - xi) * delta);
  return b;
}

RateBound RateBound::thakur_scheme(double xi, double delta, double zeta,
                                   double initial_error) {
  require_in(xi, 0.0, 1.0, "xi", true);
  require_in(delta, 0.0, 1.0, "delta", true);
  require_in(zeta, 0.0, 1.0, "zeta", false);  // zeta = 1 allowed for checks
  if (initial_error < 0) throw ParameterError("initial error must be >= 0");
  RateBound b;
  b.scheme = SchemeId::Thakur;
  b.xi = xi;
  b.delta = delta;
  b.zeta = zeta;
  b.initial_error = initial_error;
  b.per_step_factor = xi * xi * (1.0 - (1.0 - xi) * delta * zeta);
  return b;
}

double bound_new(double xi, double delta, double e1, std::size_t n) {
  return RateBound::new_scheme(xi, delta, e1).bound_at(n);
}

double bound_thakur(double xi, double delta, double zeta, double e1,
                    std::size_t n) {
  return RateBound::thakur_scheme(xi, delta, zeta, e1).bound_at(n);
}

double theoretical_ratio(double xi, double delta, double zeta, double e1_new,
                         double e1_thakur, std::size_t n) {
  require_in(xi, 0.0, 1.0, "xi", true);
  require_in(delta, 0.0, 1.0, "delta", true);
  require_in(zeta, 0.0, 1.0, "zeta", false);
  if (e1_new < 0) throw ParameterError("e1_new must be >= 0");
  if (!(e1_thakur > 0)) {
    throw ParameterError("e1_thakur must be > 0 for the bound ratio");
  }
  if (e1_new == 0.0) return 0.0;
  // xi^(2n) cancels between the bounds; work with the remaining factors in
  // log space so that n in the hundreds stays away from denormals.
  double a = 1.0 - (1.0 - xi) * delta;
  double b = 1.0 - (1.0 - xi) * delta * zeta;
  double log_ratio = static_cast<double>(n) * (std::log(a) - std::log(b)) +
                     std::log(e1_new) - std::log(e1_thakur);
  return std::exp(log_ratio);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::AFaster: return "a_faster";
    case Verdict::BFaster: return "b_faster";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<std::size_t> ComparisonReport::first_n_below(double eps) const {
  for (std::size_t i = 0; i < ratio_sequence.size(); ++i) {
    if (ratio_sequence[i] < eps) return i + 1;
  }
  return std::nullopt;
}

namespace {

// The tail must sit fully below the threshold and keep decreasing.
bool tail_decides(const std::vector<double>& ratios,
                  const CompareOptions& opt) {
  if (ratios.size() < 2) return false;
  std::size_t tail_len = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(
             static_cast<double>(ratios.size()) * opt.tail_fraction)));
  tail_len = std::min(tail_len, ratios.size());
  std::size_t begin = ratios.size() - tail_len;
  for (std::size_t i = begin; i < ratios.size(); ++i) {
    if (!(ratios[i] < opt.threshold)) return false;
    if (i > begin && ratios[i] > ratios[i - 1] * (1.0 + 1e-9)) return false;
  }
  return ratios.back() < ratios[begin];
}

}  // namespace

namespace {

// Distance in the norm encoded by the points' space tag.
double tagged_distance(const Point& u, const Point& v) {
  if (u.space_tag() != v.space_tag() || u.dim() != v.dim()) {
    throw SpaceMismatchError("distance between points of different spaces");
  }
  const std::string& tag = u.space_tag();
  if (tag.rfind("euclidean", 0) == 0) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
      double d = u[i] - v[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  if (tag.rfind("grid", 0) == 0) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
      m = std::max(m, std::abs(u[i] - v[i]));
    }
    return m;
  }
  return std::abs(u[0] - v[0]);
}

}  // namespace

ComparisonReport empirical_compare(const Trajectory& a, const Trajectory& b,
                                   const Point& q,
                                   const CompareOptions& options) {
  if (a.iterates.empty() || b.iterates.empty()) {
    throw ParameterError("empirical_compare needs nonempty trajectories");
  }
  if (a.iterates.front().space_tag() != q.space_tag() ||
      b.iterates.front().space_tag() != q.space_tag()) {
    throw SpaceMismatchError("trajectories and target live in different spaces");
  }

  ComparisonReport rep;
  rep.scheme_a = a.scheme;
  rep.scheme_b = b.scheme;

  std::size_t n = std::min(a.iterates.size(), b.iterates.size());
  for (std::size_t i = 0; i < n; ++i) {
    double ea = tagged_distance(a.iterates[i], q);
    double eb = tagged_distance(b.iterates[i], q);
    if (ea < options.error_floor || eb < options.error_floor) break;
    rep.ratio_sequence.push_back(ea / eb);
  }

  if (tail_decides(rep.ratio_sequence, options)) {
    rep.verdict = Verdict::AFaster;
  } else {
    std::vector<double> inverse(rep.ratio_sequence.size());
    std::transform(rep.ratio_sequence.begin(), rep.ratio_sequence.end(),
                   inverse.begin(), [](double r) { return 1.0 / r; });
    rep.verdict = tail_decides(inverse, options) ? Verdict::BFaster
                                                 : Verdict::Inconclusive;
  }
  return rep;
}

double estimate_contraction_factor(const MappingSpec& map,
                                   std::size_t grid_points) {
  if (!map.domain.is_box()) {
    throw ParameterError(
        "contraction estimation needs an interval-box domain");
  }
  if (grid_points < 2) throw ParameterError("need at least 2 grid points");

  const auto& lo = map.domain.lower();
  const auto& hi = map.domain.upper();
  double max_ratio = 0.0;

  if (lo.size() == 1) {
    // adjacent pairs of a fine uniform grid approximate the Lipschitz
    // supremum of a smooth map well
    double h = (hi[0] - lo[0]) / static_cast<double>(grid_points - 1);
    Point prev = map.space.make(lo[0]);
    Point prev_img = map(prev);
    for (std::size_t i = 1; i < grid_points; ++i) {
      double x = (i + 1 == grid_points) ? hi[0] : lo[0] + h * i;
      Point cur = map.space.make(x);
      Point cur_img = map(cur);
      double d = map.space.distance(cur, prev);
      if (d > 0) {
        max_ratio =
            std::max(max_ratio, map.space.distance(cur_img, prev_img) / d);
      }
      prev = std::move(cur);
      prev_img = std::move(cur_img);
    }
  } else {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&]() {
      std::vector<double> v(lo.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = lo[i] + unit(rng) * (hi[i] - lo[i]);
      }
      return map.space.make(std::move(v));
    };
    for (std::size_t i = 0; i < grid_points; ++i) {
      Point u = draw();
      Point v = draw();
      double d = map.space.distance(u, v);
      if (d > 0) {
        max_ratio = std::max(max_ratio, map.space.distance(map(u), map(v)) / d);
      }
    }
  }

  if (!(max_ratio < 1.0)) {
    throw ParameterError("sampled difference ratios reach " +
                         std::to_string(max_ratio) +
                         "; map does not look contractive");
  }
  // 1% safety margin, capped so the certificate stays below 1
  return std::min(max_ratio * 1.01, 0.5 * (1.0 + max_ratio));
}

}  // namespace fpiter
