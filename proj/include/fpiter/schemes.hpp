#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpiter/space.hpp"

namespace fpiter {

/// Catalog of iteration step rules. `NewIter` is the three-step rule
///   a = S(c), b = (1-d)a + d S(a), next = S(b);
/// `Thakur` is
///   u = (1-d)w + d S(w), v = S((1-z)w + z u), next = S(v).
/// The classical rules take their mixing parameters in computation order:
/// the first auxiliary stage uses delta, the second zeta, the final update
/// gamma. That placement is pinned by the reference table for the
/// sqrt-quadratic benchmark (see golden.hpp).
enum class SchemeId {
  Picard,
  Mann,
  Ishikawa,
  Noor,
  Agarwal,
  AbbasNazir,
  Thakur,
  NewIter,
};

inline constexpr std::array<SchemeId, 8> kAllSchemes = {
    SchemeId::Picard,  SchemeId::Mann,       SchemeId::Ishikawa,
    SchemeId::Noor,    SchemeId::Agarwal,    SchemeId::AbbasNazir,
    SchemeId::Thakur,  SchemeId::NewIter,
};

std::string_view to_string(SchemeId id);
std::optional<SchemeId> scheme_from_string(std::string_view name);

/// Mapping evaluations one step of the scheme performs (the residual check
/// in run() costs one more per recorded iterate).
int mapping_evals_per_step(SchemeId id);

/// A sequence rule n -> value, n >= 1: either a constant or a tabulated list
/// extended by its final value. Every value must lie strictly inside (0,1),
/// enforced with margin 1e-15.
class SequenceRule {
 public:
  static SequenceRule constant(double value);
  static SequenceRule tabulated(std::vector<double> values);

  double at(std::size_t n) const;
  std::size_t table_size() const { return values_.size(); }
  double final_value() const { return values_.back(); }

 private:
  SequenceRule() = default;
  std::vector<double> values_;
};

struct ParamSchedule {
  SequenceRule delta = SequenceRule::constant(0.5);
  SequenceRule zeta = SequenceRule::constant(0.5);
  SequenceRule gamma = SequenceRule::constant(0.5);

  static ParamSchedule constants(double delta, double zeta, double gamma);
};

enum class StopReason { ToleranceMet, MaxIters, Diverged };

std::string_view to_string(StopReason reason);

struct StopRule {
  double tol = 1e-10;
  std::size_t max_iters = 100;
};

/// Ordered record of iterates with per-step diagnostics. Step 1 is the
/// initial point. `errors` is present only when the mapping declares a
/// known fixed point.
struct Trajectory {
  SchemeId scheme = SchemeId::Picard;
  std::vector<Point> iterates;
  std::vector<double> residuals;
  std::optional<std::vector<double>> errors;
  StopReason stop_reason = StopReason::MaxIters;
  std::size_t mapping_evals = 0;

  std::size_t steps() const { return iterates.size(); }

  /// 1-based index of the first step whose stopping metric (error when
  /// recorded, residual otherwise) is <= tol.
  std::optional<std::size_t> first_step_at_tol(double tol) const;
};

using MapFn = std::function<Point(const Point&)>;

Point step_new(const MapFn& S, const Point& c, double delta);
Point step_thakur(const MapFn& S, const Point& w, double delta, double zeta);
Point step_classical(SchemeId scheme, const MapFn& S, const Point& x,
                     double delta, double zeta, double gamma);

Point step_new(const MappingSpec& map, const Point& c, double delta);
Point step_thakur(const MappingSpec& map, const Point& w, double delta,
                  double zeta);
Point step_classical(SchemeId scheme, const MappingSpec& map, const Point& x,
                     double delta, double zeta, double gamma);

/// Dispatch on the scheme id; thakur and new_iter ignore gamma (and new_iter
/// ignores zeta as well).
Point step(SchemeId scheme, const MapFn& S, const Point& x, double delta,
           double zeta, double gamma);

/// Iterates the scheme from x0. Stops when the error to the known fixed
/// point (when available, residual otherwise) drops to tol, when max_iters
/// iterates are recorded, or when a non-finite value appears (stop_reason
/// Diverged, partial trajectory kept).
Trajectory run(SchemeId scheme, const MappingSpec& map, const Point& x0,
               const ParamSchedule& params, const StopRule& stop);

}  // namespace fpiter
