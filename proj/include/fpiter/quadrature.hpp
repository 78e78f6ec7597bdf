#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fpiter/space.hpp"

namespace fpiter {

enum class QuadRule { Trapezoid, Simpson };

std::string_view to_string(QuadRule rule);
std::optional<QuadRule> quad_rule_from_string(std::string_view name);

/// Tensor-product composite quadrature on an axis-aligned box with uniformly
/// spaced nodes per axis. Simpson needs an even interval count (odd node
/// count >= 3) per axis. Flat node indices run lexicographically with axis 0
/// slowest; summation follows that order, so results are reproducible
/// bit-for-bit.
///
/// Besides the full-box rule the grid carries, for every axis and every node
/// index k, a weight row that integrates over the leading subrange
/// [g, node_k]. Those rows are composite Newton-Cotes rules on the subrange
/// (Simpson patched with a 3/8 tail for odd interval counts, and a cubic
/// short-range rule when only one interval is covered), so each row's
/// weights sum to node_k - g and linear integrands are integrated exactly.
class QuadratureGrid {
 public:
  QuadratureGrid(std::vector<std::array<double, 2>> box,
                 std::vector<std::size_t> nodes_per_axis, QuadRule rule);

  std::size_t dims() const { return box_.size(); }
  QuadRule rule() const { return rule_; }
  const std::vector<std::array<double, 2>>& box() const { return box_; }
  std::size_t axis_nodes(std::size_t axis) const { return coords_[axis].size(); }
  std::size_t total_nodes() const { return total_; }
  double axis_spacing(std::size_t axis) const { return spacing_[axis]; }
  double max_spacing() const;

  const std::vector<double>& axis_coords(std::size_t axis) const {
    return coords_[axis];
  }
  const std::vector<double>& axis_weights(std::size_t axis) const {
    return weights_[axis];
  }
  /// Weights integrating over [g, node_k] along one axis (length = node
  /// count; entries beyond the short-range stencil are zero).
  const std::vector<double>& volterra_axis_weights(std::size_t axis,
                                                   std::size_t k) const {
    return volterra_[axis][k];
  }

  void unflatten(std::size_t flat, std::span<std::size_t> out) const;
  void node_coords(std::size_t flat, std::span<double> out) const;
  double tensor_weight(std::size_t flat) const { return tensor_weights_[flat]; }
  const std::vector<double>& tensor_weights() const { return tensor_weights_; }

  /// Integral of nodal values against the full-box rule, accumulated in flat
  /// (lexicographic) order.
  double integrate(std::span<const double> values) const;

  /// The grid-function space over these nodes (max-abs norm).
  NormedSpace space() const;

  /// Samples f at every node, flat order.
  std::vector<double> sample(
      const std::function<double(std::span<const double>)>& f) const;

 private:
  std::vector<std::array<double, 2>> box_;
  QuadRule rule_;
  std::size_t total_ = 1;
  std::vector<double> spacing_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<std::vector<double>>> volterra_;
  std::vector<double> tensor_weights_;
};

/// Free-function form of QuadratureGrid::integrate.
double quadrature(const QuadratureGrid& grid, std::span<const double> values);

}  // namespace fpiter
