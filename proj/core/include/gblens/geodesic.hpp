#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "gblens/types.hpp"

namespace gblens {

struct GeodesicState {
  double r = 0.0;
  double phi = 0.0;
  double r_dot = 0.0;
  double phi_dot = 0.0;
};

struct GeodesicDerivative {
  double r_dot = 0.0;
  double phi_dot = 0.0;
  double r_ddot = 0.0;
  double phi_ddot = 0.0;
};

// x'' = -Gamma(x) x' x' in first-order form.
GeodesicDerivative geodesic_rhs(MetricId id, const SpacetimeParams& params,
                                const GeodesicState& s);

enum class StopReason { ReachedEscape, ParameterLimit, Captured };

struct StopCondition {
  double r_escape = std::numeric_limits<double>::infinity();
  double p_max = 0.0;  // affine-parameter budget, must be finite and positive
  double r_min = 0.0;  // crossing it reports Captured
};

struct IntegrationConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.0; // 0 picks a step from the state's own scales
};

struct PathSample {
  double p = 0.0; // affine parameter
  GeodesicState state;
};

struct Path {
  std::vector<PathSample> samples;
  double clairaut_constant = 0.0; // G phi_dot at launch
  double clairaut_drift = 0.0;    // max |G phi_dot - clairaut_constant| over samples
  StopReason reason = StopReason::ParameterLimit;
  long rhs_evaluations = 0;
};

// Adaptive dense-output integration until one of the stop conditions fires.
// The final sample sits on the triggering boundary to within root-finding
// accuracy. Capture is reported in `reason`, not thrown.
Path integrate_geodesic(MetricId id, const SpacetimeParams& params, const GeodesicState& init,
                        const StopCondition& stop, const IntegrationConfig& cfg = {});

struct ShootConfig {
  double r_start = 0.0;        // 0 picks 1e4 * b; explicit values must be >= 1e4 * b
  bool richardson = true;      // second pass at 10 r_start cancels the O(b/r_start) tail
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

// Total bending angle of the null geodesic with impact parameter b, launched
// inward from r_start and integrated to the far outgoing asymptote:
// delta = (phi sweep) - pi. Throws capture_error below the critical b.
DeflectionResult shoot_deflection(MetricId id, const SpacetimeParams& params, double b,
                                  const ShootConfig& cfg = {});

// Signed geodesic curvature of the coordinate circle r = r0 traversed with
// increasing phi: G_r / (2 G sqrt(E)).
double geodesic_curvature_circle(MetricId id, const SpacetimeParams& params, double r0);

// 2-jet of a parametrized curve s -> (r(s), phi(s)).
struct CurveJet {
  Point x;
  double r_dot = 0.0, phi_dot = 0.0;
  double r_ddot = 0.0, phi_ddot = 0.0;
};

// kappa_g = g(x'' + Gamma x' x', n) / |x'|^2 with n the left unit normal of
// the tangent. Parametrization-independent; zero exactly on geodesics.
double geodesic_curvature_numeric(MetricId id, const SpacetimeParams& params, const CurveJet& jet);

// Same, with the jet taken by central differences of `curve` at s.
double geodesic_curvature_numeric(MetricId id, const SpacetimeParams& params,
                                  const std::function<Point(double)>& curve, double s,
                                  double fd_step = 1e-5);

} // namespace gblens
