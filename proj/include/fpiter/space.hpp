#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fpiter/errors.hpp"

namespace fpiter {

enum class SpaceKind { RealLine, Euclidean, ChebyshevGrid };

/// An element of a normed space: a scalar, a fixed-dimension vector, or a
/// grid-sampled function. The tag ties the point to the space it was created
/// in; arithmetic between points with different tags is an error.
class Point {
 public:
  Point() = default;
  Point(std::string space_tag, std::vector<double> values)
      : tag_(std::move(space_tag)), values_(std::move(values)) {}

  std::size_t dim() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::string& space_tag() const { return tag_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Scalar payload; requires dim() == 1.
  double as_scalar() const;

  bool finite() const;

 private:
  std::string tag_;
  std::vector<double> values_;
};

/// Convex set descriptor: either an axis-aligned interval box or the whole
/// space. Membership is checked with a small tolerance so that roundoff at
/// box faces does not trip the domain guard.
class Domain {
 public:
  static constexpr double kMembershipTol = 1e-12;

  static Domain whole_space() { return Domain(); }
  static Domain box(std::vector<double> lo, std::vector<double> hi);
  static Domain interval(double lo, double hi) { return box({lo}, {hi}); }

  bool is_box() const { return !whole_; }
  bool contains(const Point& p, double tol = kMembershipTol) const;
  const std::vector<double>& lower() const { return lo_; }
  const std::vector<double>& upper() const { return hi_; }

 private:
  Domain() = default;
  bool whole_ = true;
  std::vector<double> lo_, hi_;
};

class NormedSpace {
 public:
  static NormedSpace real_line();
  static NormedSpace euclidean(std::size_t dim);
  /// Grid space over the tensor product of the given per-axis node vectors,
  /// normed by the maximum absolute nodal value.
  static NormedSpace chebyshev_grid(std::vector<std::vector<double>> axes);

  SpaceKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::string& tag() const { return tag_; }
  const std::vector<std::vector<double>>& axes() const { return axes_; }

  Point make(std::vector<double> values) const;
  Point make(double scalar) const { return make(std::vector<double>{scalar}); }
  Point zero() const { return make(std::vector<double>(dim_, 0.0)); }

  double norm(const Point& u) const;
  /// norm(u - v) without forming the difference point.
  double distance(const Point& u, const Point& v) const;

  bool owns(const Point& p) const {
    return p.space_tag() == tag_ && p.dim() == dim_;
  }

 private:
  NormedSpace(SpaceKind kind, std::size_t dim, std::string tag,
              std::vector<std::vector<double>> axes = {})
      : kind_(kind), dim_(dim), tag_(std::move(tag)), axes_(std::move(axes)) {}

  SpaceKind kind_ = SpaceKind::RealLine;
  std::size_t dim_ = 1;
  std::string tag_;
  std::vector<std::vector<double>> axes_;
};

/// Point on the real line (shorthand for NormedSpace::real_line().make(x)).
Point real_point(double x);

Point add(const Point& u, const Point& v);
Point sub(const Point& u, const Point& v);
Point scale(double s, const Point& u);

/// (1-t)u + tv computed as u + t(v-u), clamped componentwise to the
/// min/max envelope of u and v. Exact at t = 0 and for u == v.
Point convex_combine(const Point& u, const Point& v, double t);

enum class LipschitzClass { Contraction, Nonexpansive, Unknown };

/// A self-map S on a convex subset of a normed space. `eval` must be pure;
/// every evaluation checks that argument and image lie in the domain.
struct MappingSpec {
  using EvalFn = std::function<Point(const Point&)>;

  NormedSpace space;
  Domain domain = Domain::whole_space();
  EvalFn eval;
  LipschitzClass lipschitz_class = LipschitzClass::Unknown;
  double contraction_factor = std::numeric_limits<double>::quiet_NaN();
  std::optional<Point> known_fixed_point;

  Point operator()(const Point& p) const;
};

struct LipschitzReport {
  double max_ratio = 0.0;
  std::size_t violations = 0;
  std::size_t pairs_used = 0;
};

/// Empirical check of the declared Lipschitz class over sample pairs.
/// Degenerate pairs (u == v) are skipped; violations are counted against the
/// declared class bound plus a 1e-12 tolerance.
LipschitzReport spot_check_lipschitz(
    const MappingSpec& map, std::span<const std::pair<Point, Point>> pairs);

}  // namespace fpiter
