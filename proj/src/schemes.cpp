#include "fpiter/schemes.hpp"

#include <cmath>
#include <utility>

namespace fpiter {

std::string_view to_string(SchemeId id) {
  switch (id) {
    case SchemeId::Picard: return "picard";
    case SchemeId::Mann: return "mann";
    case SchemeId::Ishikawa: return "ishikawa";
    case SchemeId::Noor: return "noor";
    case SchemeId::Agarwal: return "agarwal";
    case SchemeId::AbbasNazir: return "abbas-nazir";
    case SchemeId::Thakur: return "thakur";
    case SchemeId::NewIter: return "new";
  }
  return "?";
}

std::optional<SchemeId> scheme_from_string(std::string_view name) {
  for (SchemeId id : kAllSchemes) {
    if (name == to_string(id)) return id;
  }
  if (name == "abbas" || name == "abbas_nazir") return SchemeId::AbbasNazir;
  if (name == "new-iter" || name == "new_iter") return SchemeId::NewIter;
  return std::nullopt;
}

int mapping_evals_per_step(SchemeId id) {
  switch (id) {
    case SchemeId::Picard: return 1;
    case SchemeId::Mann: return 1;
    case SchemeId::Ishikawa: return 2;
    case SchemeId::Noor: return 3;
    case SchemeId::Agarwal: return 2;
    case SchemeId::AbbasNazir: return 3;
    case SchemeId::Thakur: return 3;
    case SchemeId::NewIter: return 3;
  }
  return 0;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ToleranceMet: return "tolerance_met";
    case StopReason::MaxIters: return "max_iters";
    case StopReason::Diverged: return "diverged";
  }
  return "?";
}

namespace {

constexpr double kOpenUnitMargin = 1e-15;

void require_open_unit(double v, const char* name) {
  if (!(v >= kOpenUnitMargin && v <= 1.0 - kOpenUnitMargin)) {
    throw ParameterError(std::string(name) + " = " + std::to_string(v) +
                         " must lie strictly inside (0,1)");
  }
}

}  // namespace

SequenceRule SequenceRule::constant(double value) {
  require_open_unit(value, "schedule value");
  SequenceRule r;
  r.values_ = {value};
  return r;
}

SequenceRule SequenceRule::tabulated(std::vector<double> values) {
  if (values.empty()) throw ParameterError("tabulated rule needs values");
  for (double v : values) require_open_unit(v, "schedule value");
  SequenceRule r;
  r.values_ = std::move(values);
  return r;
}

double SequenceRule::at(std::size_t n) const {
  if (n == 0) throw ParameterError("schedule index is 1-based");
  return values_[std::min(n - 1, values_.size() - 1)];
}

ParamSchedule ParamSchedule::constants(double delta, double zeta, double gamma) {
  return ParamSchedule{SequenceRule::constant(delta),
                       SequenceRule::constant(zeta),
                       SequenceRule::constant(gamma)};
}

std::optional<std::size_t> Trajectory::first_step_at_tol(double tol) const {
  const std::vector<double>& metric = errors ? *errors : residuals;
  for (std::size_t i = 0; i < metric.size(); ++i) {
    if (metric[i] <= tol) return i + 1;
  }
  return std::nullopt;
}

Point step_new(const MapFn& S, const Point& c, double delta) {
  require_open_unit(delta, "delta");
  Point a = S(c);
  Point b = convex_combine(a, S(a), delta);
  return S(b);
}

Point step_thakur(const MapFn& S, const Point& w, double delta, double zeta) {
  require_open_unit(delta, "delta");
  require_open_unit(zeta, "zeta");
  Point u = convex_combine(w, S(w), delta);
  Point v = S(convex_combine(w, u, zeta));
  return S(v);
}

Point step_classical(SchemeId scheme, const MapFn& S, const Point& x,
                     double delta, double zeta, double gamma) {
  switch (scheme) {
    case SchemeId::Picard:
      return S(x);
    case SchemeId::Mann:
      require_open_unit(delta, "delta");
      return convex_combine(x, S(x), delta);
    case SchemeId::Ishikawa: {
      require_open_unit(delta, "delta");
      require_open_unit(zeta, "zeta");
      Point y = convex_combine(x, S(x), delta);
      return convex_combine(x, S(y), zeta);
    }
    case SchemeId::Noor: {
      require_open_unit(delta, "delta");
      require_open_unit(zeta, "zeta");
      require_open_unit(gamma, "gamma");
      Point z = convex_combine(x, S(x), delta);
      Point y = convex_combine(x, S(z), zeta);
      return convex_combine(x, S(y), gamma);
    }
    case SchemeId::Agarwal: {
      require_open_unit(delta, "delta");
      require_open_unit(zeta, "zeta");
      Point sx = S(x);
      Point y = convex_combine(x, sx, delta);
      return convex_combine(sx, S(y), zeta);
    }
    case SchemeId::AbbasNazir: {
      require_open_unit(delta, "delta");
      require_open_unit(zeta, "zeta");
      require_open_unit(gamma, "gamma");
      Point sx = S(x);
      Point z = convex_combine(x, sx, delta);
      Point sz = S(z);
      Point y = convex_combine(sx, sz, zeta);
      return convex_combine(S(y), sz, gamma);
    }
    default:
      throw ParameterError("step_classical called with a non-classical scheme");
  }
}

Point step(SchemeId scheme, const MapFn& S, const Point& x, double delta,
           double zeta, double gamma) {
  switch (scheme) {
    case SchemeId::Thakur:
      return step_thakur(S, x, delta, zeta);
    case SchemeId::NewIter:
      return step_new(S, x, delta);
    default:
      return step_classical(scheme, S, x, delta, zeta, gamma);
  }
}

Point step_new(const MappingSpec& map, const Point& c, double delta) {
  return step_new([&map](const Point& p) { return map(p); }, c, delta);
}

Point step_thakur(const MappingSpec& map, const Point& w, double delta,
                  double zeta) {
  return step_thakur([&map](const Point& p) { return map(p); }, w, delta, zeta);
}

Point step_classical(SchemeId scheme, const MappingSpec& map, const Point& x,
                     double delta, double zeta, double gamma) {
  return step_classical(scheme, [&map](const Point& p) { return map(p); }, x,
                        delta, zeta, gamma);
}

Trajectory run(SchemeId scheme, const MappingSpec& map, const Point& x0,
               const ParamSchedule& params, const StopRule& stop) {
  if (!(stop.tol > 0.0)) throw ParameterError("stop tolerance must be > 0");
  if (stop.max_iters < 1) throw ParameterError("max_iters must be >= 1");

  std::size_t evals = 0;
  MapFn S = [&map, &evals](const Point& p) {
    ++evals;
    return map(p);
  };

  const auto& q = map.known_fixed_point;
  Trajectory tr;
  tr.scheme = scheme;
  if (q) tr.errors.emplace();

  Point x = x0;
  for (std::size_t n = 1;; ++n) {
    double res = map.space.distance(S(x), x);
    tr.iterates.push_back(x);
    tr.residuals.push_back(res);
    double metric = res;
    if (q) {
      double err = map.space.distance(x, *q);
      tr.errors->push_back(err);
      metric = err;
    }
    if (!std::isfinite(metric) || !std::isfinite(res)) {
      tr.stop_reason = StopReason::Diverged;
      break;
    }
    if (metric <= stop.tol) {
      tr.stop_reason = StopReason::ToleranceMet;
      break;
    }
    if (n == stop.max_iters) {
      tr.stop_reason = StopReason::MaxIters;
      break;
    }
    Point next = step(scheme, S, x, params.delta.at(n), params.zeta.at(n),
                      params.gamma.at(n));
    if (!next.finite()) {
      tr.stop_reason = StopReason::Diverged;
      break;
    }
    x = std::move(next);
  }
  tr.mapping_evals = evals;
  return tr;
}

}  // namespace fpiter
