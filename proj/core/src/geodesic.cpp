#include "gblens/geodesic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "gblens/curvature.hpp"
#include "gblens/metric.hpp"
#include "metric_internal.hpp"

namespace gblens {

namespace {

namespace ode = boost::numeric::odeint;
using State4 = std::array<double, 4>; // r, phi, r_dot, phi_dot

// Same contraction as geodesic_rhs, kept total so trial RK nodes that stray
// outside the physical domain produce finite garbage instead of throwing.
void rhs_core(MetricId id, const SpacetimeParams& params, const State4& y, State4& dy) {
  const detail::LogJet j = detail::log_jet(id, params, y[0]);
  const double rd = y[2];
  const double pd = y[3];
  // Nonzero symbols for an r-only diagonal metric:
  // Gamma^r_rr = LE/2, Gamma^r_phiphi = -G LG / (2E), Gamma^phi_rphi = LG/2.
  dy[0] = rd;
  dy[1] = pd;
  dy[2] = -(0.5 * j.LE * rd * rd - 0.5 * j.G * j.LG / j.E * pd * pd);
  dy[3] = -j.LG * rd * pd;
}

struct EventSpec {
  bool active = false;
  double threshold = 0.0;
  bool trigger_above = false; // true: fires when r >= threshold
};

bool triggered(const EventSpec& ev, double r) {
  if (!ev.active)
    return false;
  return ev.trigger_above ? r >= ev.threshold : r <= ev.threshold;
}

} // namespace

GeodesicDerivative geodesic_rhs(MetricId id, const SpacetimeParams& params,
                                const GeodesicState& s) {
  validate_point(id, params, {s.r, s.phi});
  if (!std::isfinite(s.r_dot) || !std::isfinite(s.phi_dot))
    throw domain_error("geodesic tangent must be finite");
  State4 y{s.r, s.phi, s.r_dot, s.phi_dot};
  State4 dy;
  rhs_core(id, params, y, dy);
  return {dy[0], dy[1], dy[2], dy[3]};
}

Path integrate_geodesic(MetricId id, const SpacetimeParams& params, const GeodesicState& init,
                        const StopCondition& stop, const IntegrationConfig& cfg) {
  validate_point(id, params, {init.r, init.phi});
  if (init.r_dot == 0.0 && init.phi_dot == 0.0)
    throw domain_error("geodesic tangent must be nonzero");
  if (!(stop.p_max > 0.0) || !std::isfinite(stop.p_max))
    throw domain_error("p_max must be finite and positive");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw domain_error("tolerances must be positive");

  Path path;
  path.clairaut_constant = eval_metric(id, params, {init.r, init.phi}).G * init.phi_dot;

  long evals = 0;
  const auto sys = [&](const State4& y, State4& dy, double) {
    rhs_core(id, params, y, dy);
    ++evals;
  };

  const auto record = [&](double t, const State4& y) {
    path.samples.push_back({t, {y[0], y[1], y[2], y[3]}});
    const double c = detail::log_jet(id, params, y[0]).G * y[3];
    path.clairaut_drift = std::max(path.clairaut_drift, std::abs(c - path.clairaut_constant));
  };

  const EventSpec capture{stop.r_min > 0.0, stop.r_min, false};
  EventSpec escape{std::isfinite(stop.r_escape), stop.r_escape, true};

  State4 y{init.r, init.phi, init.r_dot, init.phi_dot};
  record(0.0, y);

  if (triggered(capture, init.r)) {
    path.reason = StopReason::Captured;
    return path;
  }
  if (escape.active && init.r >= stop.r_escape) {
    if (init.r_dot > 0.0) {
      path.reason = StopReason::ReachedEscape;
      return path;
    }
    escape.active = false; // launched at or outside the boundary, arm on re-entry
  }

  double dt = cfg.initial_step;
  if (dt <= 0.0) {
    const double v = std::abs(init.r_dot) + init.r * std::abs(init.phi_dot);
    dt = std::min(1e-3 * init.r / v, 0.1 * stop.p_max);
  }

  auto stepper = ode::make_dense_output(cfg.abs_tol, cfg.rel_tol,
                                        ode::runge_kutta_dopri5<State4>());
  stepper.initialize(y, 0.0, dt);

  // Bisect the dense interpolant down to the event time.
  const auto refine = [&](double t_lo, double t_hi, const EventSpec& ev) {
    State4 tmp;
    for (int i = 0; i < 200 && t_hi - t_lo > 1e-14 * (std::abs(t_hi) + 1.0); ++i) {
      const double tm = 0.5 * (t_lo + t_hi);
      stepper.calc_state(tm, tmp);
      (triggered(ev, tmp[0]) ? t_hi : t_lo) = tm;
    }
    return t_hi;
  };

  const long max_steps = 2000000;
  for (long step = 0; step < max_steps; ++step) {
    std::pair<double, double> span;
    try {
      span = stepper.do_step(sys);
    } catch (const std::exception& e) {
      throw tolerance_error(std::string("step-size control failed: ") + e.what());
    }

    const double t_end = std::min(span.second, stop.p_max);
    State4 y_end;
    stepper.calc_state(t_end, y_end);

    const bool cap_hit = triggered(capture, y_end[0]);
    const bool esc_hit = escape.active && triggered(escape, y_end[0]);
    if (cap_hit || esc_hit) {
      double t_ev = t_end;
      StopReason why = StopReason::Captured;
      if (cap_hit && esc_hit) { // distinct thresholds, take the earlier crossing
        const double tc = refine(span.first, t_end, capture);
        const double te = refine(span.first, t_end, escape);
        t_ev = std::min(tc, te);
        why = tc <= te ? StopReason::Captured : StopReason::ReachedEscape;
      } else {
        t_ev = refine(span.first, t_end, cap_hit ? capture : escape);
        why = cap_hit ? StopReason::Captured : StopReason::ReachedEscape;
      }
      stepper.calc_state(t_ev, y_end);
      record(t_ev, y_end);
      path.reason = why;
      path.rhs_evaluations = evals;
      return path;
    }

    if (span.second >= stop.p_max) {
      record(stop.p_max, y_end);
      path.reason = StopReason::ParameterLimit;
      path.rhs_evaluations = evals;
      return path;
    }

    record(span.second, y_end);
    if (!escape.active && std::isfinite(stop.r_escape) && y_end[0] < stop.r_escape)
      escape.active = true;
  }
  throw convergence_error("step budget exhausted after " + std::to_string(max_steps) +
                          " accepted steps");
}

DeflectionResult shoot_deflection(MetricId id, const SpacetimeParams& params, double b,
                                  const ShootConfig& cfg) {
  if (!(b > 0.0) || !std::isfinite(b))
    throw domain_error("impact parameter b must be positive and finite");
  const double r_start = cfg.r_start > 0.0 ? cfg.r_start : 1e4 * b;
  if (r_start < 1e4 * b * (1.0 - 1e-12))
    throw domain_error("r_start must be at least 1e4 b to reach the asymptotic regime");

  const double r_min =
      id == MetricId::Flat ? 0.0 : 2.0 * params.mass * (1.0 + 1e-6);

  const auto single_pass = [&](double R) {
    const MetricComponents c = eval_metric(id, params, {R, 0.0});
    if (b * b >= c.G)
      throw domain_error("impact parameter exceeds the angular radius at r_start");
    GeodesicState launch;
    launch.r = R;
    launch.phi = 0.0;
    launch.phi_dot = b / c.G; // unit-speed ray with Clairaut constant b
    launch.r_dot = -std::sqrt((1.0 - b * b / c.G) / c.E);

    StopCondition stop;
    stop.r_escape = R;
    stop.r_min = r_min;
    stop.p_max = 40.0 * R + 1000.0 * (params.mass + b);

    IntegrationConfig icfg;
    icfg.rel_tol = cfg.rel_tol;
    icfg.abs_tol = cfg.abs_tol;

    const Path path = integrate_geodesic(id, params, launch, stop, icfg);
    if (path.reason == StopReason::Captured)
      throw capture_error("ray with b = " + std::to_string(b) +
                          " fell to the capture radius; b is below the critical value");
    if (path.reason == StopReason::ParameterLimit)
      throw convergence_error("ray did not return to the escape radius within the parameter "
                              "budget; b is likely near-critical");
    return std::pair{path.samples.back().state.phi - pi, path.rhs_evaluations};
  };

  const auto [d1, n1] = single_pass(r_start);
  DeflectionResult out;
  out.method = DeflectionMethod::Shooting;
  if (!cfg.richardson) {
    out.angle = d1;
    out.error_estimate = 2.0 * b / r_start + 30.0 * cfg.rel_tol * std::abs(d1);
    out.evaluations = n1;
    return out;
  }

  // delta_raw(R) = delta - 2b/R + O(R^-2); two radii cancel the leading tail.
  const auto [d2, n2] = single_pass(10.0 * r_start);
  out.angle = (10.0 * d2 - d1) / 9.0;
  out.error_estimate = std::abs(d2 - d1) / 9.0 * (20.0 * b / r_start) +
                       30.0 * cfg.rel_tol * std::max(std::abs(out.angle), 1e-2);
  out.evaluations = n1 + n2;
  return out;
}

double geodesic_curvature_circle(MetricId id, const SpacetimeParams& params, double r0) {
  const Point p{r0, 0.0};
  const MetricComponents c = eval_metric(id, params, p);
  const MetricDerivatives d = eval_metric_derivatives(id, params, p);
  return d.G_r / (2.0 * c.G * std::sqrt(c.E));
}

double geodesic_curvature_numeric(MetricId id, const SpacetimeParams& params,
                                  const CurveJet& jet) {
  const MetricComponents c = eval_metric(id, params, jet.x);
  const double vr = jet.r_dot;
  const double vp = jet.phi_dot;
  const double speed2 = c.E * vr * vr + 2.0 * c.F * vr * vp + c.G * vp * vp;
  if (!(speed2 > 0.0) || !std::isfinite(speed2))
    throw domain_error("degenerate curve tangent");

  const ChristoffelSymbols g = christoffel(id, params, jet.x);
  const double ar = jet.r_ddot + g(0, 0, 0) * vr * vr + 2.0 * g(0, 0, 1) * vr * vp +
                    g(0, 1, 1) * vp * vp;
  const double ap = jet.phi_ddot + g(1, 0, 0) * vr * vr + 2.0 * g(1, 0, 1) * vr * vp +
                    g(1, 1, 1) * vp * vp;

  // Left unit normal, lowered: n = sqrt(det g) (-T^phi, T^r).
  const double speed = std::sqrt(speed2);
  const double root = area_element(c);
  const double n_r = -root * vp / speed;
  const double n_p = root * vr / speed;
  return (ar * n_r + ap * n_p) / speed2;
}

double geodesic_curvature_numeric(MetricId id, const SpacetimeParams& params,
                                  const std::function<Point(double)>& curve, double s,
                                  double fd_step) {
  if (!(fd_step > 0.0))
    throw domain_error("fd_step must be positive");
  const Point p0 = curve(s);
  const Point pp = curve(s + fd_step);
  const Point pm = curve(s - fd_step);
  CurveJet jet;
  jet.x = p0;
  jet.r_dot = (pp.r - pm.r) / (2.0 * fd_step);
  jet.phi_dot = (pp.phi - pm.phi) / (2.0 * fd_step);
  jet.r_ddot = (pp.r - 2.0 * p0.r + pm.r) / (fd_step * fd_step);
  jet.phi_ddot = (pp.phi - 2.0 * p0.phi + pm.phi) / (fd_step * fd_step);
  return geodesic_curvature_numeric(id, params, jet);
}

} // namespace gblens
