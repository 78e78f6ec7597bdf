#include "fpiter/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fpiter {

double Point::as_scalar() const {
  if (values_.size() != 1) {
    throw SpaceMismatchError("as_scalar() called on a point of dimension " +
                             std::to_string(values_.size()));
  }
  return values_[0];
}

bool Point::finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw ParameterError("domain box bounds must be nonempty and equal-sized");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) {
      throw ParameterError("domain box requires lo < hi on every axis");
    }
  }
  Domain d;
  d.whole_ = false;
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

bool Domain::contains(const Point& p, double tol) const {
  if (whole_) return true;
  if (p.dim() != lo_.size()) return false;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (!(p[i] >= lo_[i] - tol && p[i] <= hi_[i] + tol)) return false;
  }
  return true;
}

NormedSpace NormedSpace::real_line() {
  return NormedSpace(SpaceKind::RealLine, 1, "real-line");
}

NormedSpace NormedSpace::euclidean(std::size_t dim) {
  if (dim == 0) throw ParameterError("euclidean space needs dimension >= 1");
  return NormedSpace(SpaceKind::Euclidean, dim,
                     "euclidean-" + std::to_string(dim));
}

NormedSpace NormedSpace::chebyshev_grid(std::vector<std::vector<double>> axes) {
  if (axes.empty()) throw ParameterError("grid space needs at least one axis");
  std::size_t total = 1;
  std::ostringstream tag;
  tag << "grid";
  for (const auto& ax : axes) {
    if (ax.size() < 2) throw ParameterError("grid axis needs >= 2 nodes");
    total *= ax.size();
    tag << ":" << ax.size() << "@[" << ax.front() << "," << ax.back() << "]";
  }
  return NormedSpace(SpaceKind::ChebyshevGrid, total, tag.str(),
                     std::move(axes));
}

Point NormedSpace::make(std::vector<double> values) const {
  if (values.size() != dim_) {
    throw SpaceMismatchError("payload of size " + std::to_string(values.size()) +
                             " does not fit space " + tag_);
  }
  return Point(tag_, std::move(values));
}

double NormedSpace::norm(const Point& u) const {
  if (!owns(u)) {
    throw SpaceMismatchError("point with tag '" + u.space_tag() +
                             "' does not belong to space " + tag_);
  }
  const auto& v = u.values();
  switch (kind_) {
    case SpaceKind::RealLine:
      return std::abs(v[0]);
    case SpaceKind::Euclidean: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case SpaceKind::ChebyshevGrid: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

double NormedSpace::distance(const Point& u, const Point& v) const {
  if (!owns(u) || !owns(v)) {
    throw SpaceMismatchError("distance between points of different spaces");
  }
  const auto& a = u.values();
  const auto& b = v.values();
  switch (kind_) {
    case SpaceKind::RealLine:
      return std::abs(a[0] - b[0]);
    case SpaceKind::Euclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case SpaceKind::ChebyshevGrid: {
      double m = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
      }
      return m;
    }
  }
  return 0.0;
}

Point real_point(double x) { return NormedSpace::real_line().make(x); }

namespace {

void require_same_space(const Point& u, const Point& v) {
  if (u.space_tag() != v.space_tag() || u.dim() != v.dim()) {
    throw SpaceMismatchError("arithmetic between points of different spaces ('" +
                             u.space_tag() + "' vs '" + v.space_tag() + "')");
  }
}

}  // namespace

Point add(const Point& u, const Point& v) {
  require_same_space(u, v);
  std::vector<double> out(u.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[i] + v[i];
  return Point(u.space_tag(), std::move(out));
}

Point sub(const Point& u, const Point& v) {
  require_same_space(u, v);
  std::vector<double> out(u.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = u[i] - v[i];
  return Point(u.space_tag(), std::move(out));
}

Point scale(double s, const Point& u) {
  std::vector<double> out(u.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * u[i];
  return Point(u.space_tag(), std::move(out));
}

Point convex_combine(const Point& u, const Point& v, double t) {
  require_same_space(u, v);
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ParameterError("convex combination weight t = " + std::to_string(t) +
                         " outside [0,1]");
  }
  std::vector<double> out(u.dim());
  for (std::size_t i = 0; i < out.size(); ++i) {
    double r = u[i] + t * (v[i] - u[i]);
    // keep the result inside the componentwise envelope of u and v
    double lo = std::min(u[i], v[i]);
    double hi = std::max(u[i], v[i]);
    out[i] = std::clamp(r, lo, hi);
  }
  return Point(u.space_tag(), std::move(out));
}

Point MappingSpec::operator()(const Point& p) const {
  if (!space.owns(p)) {
    throw SpaceMismatchError("mapping applied to a point of space '" +
                             p.space_tag() + "', expected " + space.tag());
  }
  if (!domain.contains(p)) {
    throw DomainViolationError("mapping argument outside domain", p.values());
  }
  Point out = eval(p);
  if (!space.owns(out)) {
    throw SpaceMismatchError("mapping returned a point of space '" +
                             out.space_tag() + "', expected " + space.tag());
  }
  if (!domain.contains(out)) {
    throw DomainViolationError("mapping left its domain", out.values());
  }
  return out;
}

LipschitzReport spot_check_lipschitz(
    const MappingSpec& map, std::span<const std::pair<Point, Point>> pairs) {
  if (pairs.empty()) {
    throw ParameterError("spot_check_lipschitz needs at least one pair");
  }
  double bound = std::numeric_limits<double>::infinity();
  switch (map.lipschitz_class) {
    case LipschitzClass::Contraction:
      bound = map.contraction_factor;
      break;
    case LipschitzClass::Nonexpansive:
      bound = 1.0;
      break;
    case LipschitzClass::Unknown:
      break;
  }
  LipschitzReport rep;
  for (const auto& [u, v] : pairs) {
    double duv = map.space.distance(u, v);
    if (duv == 0.0) continue;  // degenerate pair, skipped
    double ratio = map.space.distance(map(u), map(v)) / duv;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > bound + 1e-12) ++rep.violations;
    ++rep.pairs_used;
  }
  return rep;
}

}  // namespace fpiter
