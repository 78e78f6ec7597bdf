#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "fpiter/schemes.hpp"

namespace fpiter {

/// Frozen reference trajectories for the sqrt-quadratic benchmark: the five
/// schemes started from 40 with delta = 0.95, zeta = 0.30, gamma = 0.90.
/// Values are the published 30-step table this implementation must
/// reproduce; the comparison tolerance absorbs the final printed digit.
inline constexpr std::size_t kBenchmarkRows = 30;
inline constexpr std::size_t kBenchmarkCols = 5;
inline constexpr double kBenchmarkCellTol = 5e-10;

inline constexpr double kBenchmarkX0 = 40.0;
inline constexpr double kBenchmarkDelta = 0.95;
inline constexpr double kBenchmarkZeta = 0.30;
inline constexpr double kBenchmarkGamma = 0.90;
inline constexpr double kBenchmarkFixedPoint = 5.0;

extern const std::array<const char*, kBenchmarkCols> kBenchmarkColumnNames;
extern const std::array<SchemeId, kBenchmarkCols> kBenchmarkColumnSchemes;
extern const std::array<std::array<double, kBenchmarkCols>, kBenchmarkRows>
    kBenchmarkGolden;

using BenchmarkTable =
    std::array<std::array<double, kBenchmarkCols>, kBenchmarkRows>;

/// Runs the five schemes on the benchmark map and lays the iterates out like
/// the reference table; trajectories that reach the fixed point early are
/// extended with their final value.
BenchmarkTable compute_benchmark_table();

struct TableMismatch {
  std::size_t row = 0;  // 1-based step
  std::size_t col = 0;  // 0-based column
  double expected = 0.0;
  double actual = 0.0;
};

/// First cell of the computed table that differs from the golden values by
/// more than tol, or nullopt when everything matches.
std::optional<TableMismatch> verify_benchmark_table(
    double tol = kBenchmarkCellTol);

}  // namespace fpiter
