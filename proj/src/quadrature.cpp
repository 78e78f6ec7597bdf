#include "fpiter/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fpiter {

std::string_view to_string(QuadRule rule) {
  return rule == QuadRule::Trapezoid ? "trapezoid" : "simpson";
}

std::optional<QuadRule> quad_rule_from_string(std::string_view name) {
  if (name == "trapezoid" || name == "trapezoidal") return QuadRule::Trapezoid;
  if (name == "simpson") return QuadRule::Simpson;
  return std::nullopt;
}

namespace {

// Composite trapezoid weights for nodes 0..k of an axis (spacing h).
void trapezoid_subrange(std::vector<double>& w, std::size_t k, double h) {
  w[0] = 0.5 * h;
  for (std::size_t j = 1; j < k; ++j) w[j] = h;
  w[k] = 0.5 * h;
}

// Simpson-family weights for nodes 0..k. Even interval counts use plain
// composite Simpson. Odd counts >= 3 get a 3/8 tail on the last three
// intervals. A single interval is integrated with a cubic (or, on a 3-node
// axis, quadratic) stencil that reads a node or two past k; that keeps the
// short subranges fourth-order instead of collapsing to the trapezoid.
void simpson_subrange(std::vector<double>& w, std::size_t k, double h,
                      std::size_t axis_nodes) {
  if (k == 1) {
    if (axis_nodes >= 4) {
      w[0] += h * (9.0 / 24.0);
      w[1] += h * (19.0 / 24.0);
      w[2] += h * (-5.0 / 24.0);
      w[3] += h * (1.0 / 24.0);
    } else {
      w[0] += h * (5.0 / 12.0);
      w[1] += h * (8.0 / 12.0);
      w[2] += h * (-1.0 / 12.0);
    }
    return;
  }
  std::size_t simpson_end = (k % 2 == 0) ? k : k - 3;
  for (std::size_t j = 0; j + 2 <= simpson_end; j += 2) {
    w[j] += h / 3.0;
    w[j + 1] += 4.0 * h / 3.0;
    w[j + 2] += h / 3.0;
  }
  if (k % 2 != 0) {
    w[k - 3] += 3.0 * h / 8.0;
    w[k - 2] += 9.0 * h / 8.0;
    w[k - 1] += 9.0 * h / 8.0;
    w[k] += 3.0 * h / 8.0;
  }
}

}  // namespace

QuadratureGrid::QuadratureGrid(std::vector<std::array<double, 2>> box,
                               std::vector<std::size_t> nodes_per_axis,
                               QuadRule rule)
    : box_(std::move(box)), rule_(rule) {
  if (box_.empty() || box_.size() != nodes_per_axis.size()) {
    throw ParameterError("grid needs one node count per box axis");
  }
  const std::size_t m = box_.size();
  coords_.resize(m);
  weights_.resize(m);
  volterra_.resize(m);
  spacing_.resize(m);

  for (std::size_t ax = 0; ax < m; ++ax) {
    const double g = box_[ax][0];
    const double hset = box_[ax][1];
    if (!(g < hset)) throw ParameterError("box axis requires g < h");
    const std::size_t n = nodes_per_axis[ax];
    if (n < 2) throw ParameterError("each axis needs at least 2 nodes");
    if (rule_ == QuadRule::Simpson && (n < 3 || n % 2 == 0)) {
      throw ParameterError(
          "composite simpson needs an odd node count >= 3 per axis");
    }
    const double h = (hset - g) / static_cast<double>(n - 1);
    spacing_[ax] = h;

    auto& x = coords_[ax];
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = g + h * static_cast<double>(i);
    x[n - 1] = hset;

    auto& w = weights_[ax];
    w.assign(n, 0.0);
    if (rule_ == QuadRule::Trapezoid) {
      trapezoid_subrange(w, n - 1, h);
    } else {
      simpson_subrange(w, n - 1, h, n);
    }

    auto& vol = volterra_[ax];
    vol.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      vol[k].assign(n, 0.0);
      if (k == 0) continue;  // integral over [g, g] vanishes
      if (rule_ == QuadRule::Trapezoid) {
        trapezoid_subrange(vol[k], k, h);
      } else {
        simpson_subrange(vol[k], k, h, n);
      }
    }
    total_ *= n;
  }

  tensor_weights_.resize(total_);
  std::vector<std::size_t> idx(m);
  for (std::size_t flat = 0; flat < total_; ++flat) {
    unflatten(flat, idx);
    double w = 1.0;
    for (std::size_t ax = 0; ax < m; ++ax) w *= weights_[ax][idx[ax]];
    tensor_weights_[flat] = w;
  }
}

double QuadratureGrid::max_spacing() const {
  return *std::max_element(spacing_.begin(), spacing_.end());
}

void QuadratureGrid::unflatten(std::size_t flat,
                               std::span<std::size_t> out) const {
  for (std::size_t ax = box_.size(); ax-- > 0;) {
    std::size_t n = coords_[ax].size();
    out[ax] = flat % n;
    flat /= n;
  }
}

void QuadratureGrid::node_coords(std::size_t flat,
                                 std::span<double> out) const {
  for (std::size_t ax = box_.size(); ax-- > 0;) {
    std::size_t n = coords_[ax].size();
    out[ax] = coords_[ax][flat % n];
    flat /= n;
  }
}

double QuadratureGrid::integrate(std::span<const double> values) const {
  if (values.size() != total_) {
    throw ParameterError("nodal value count " + std::to_string(values.size()) +
                         " does not match grid with " + std::to_string(total_) +
                         " nodes");
  }
  double sum = 0.0;
  for (std::size_t flat = 0; flat < total_; ++flat) {
    sum += tensor_weights_[flat] * values[flat];
  }
  return sum;
}

NormedSpace QuadratureGrid::space() const {
  return NormedSpace::chebyshev_grid(coords_);
}

std::vector<double> QuadratureGrid::sample(
    const std::function<double(std::span<const double>)>& f) const {
  std::vector<double> out(total_);
  std::vector<double> t(dims());
  for (std::size_t flat = 0; flat < total_; ++flat) {
    node_coords(flat, t);
    out[flat] = f(t);
  }
  return out;
}

double quadrature(const QuadratureGrid& grid, std::span<const double> values) {
  return grid.integrate(values);
}

}  // namespace fpiter
