#pragma once

#include <array>

#include "gblens/types.hpp"

namespace gblens {

enum class TailHandling {
  USubstitution,    // map [r(phi), inf) to (0, sin(phi)/b] via u = 1/r
  TruncateWithBound // integrate to a finite radius, report an analytic tail bound
};

struct QuadratureConfig {
  // The quadrature's error estimate must come in under
  // 10 max(rel_tol |value|, abs_tol) or a tolerance_error is thrown.
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  unsigned max_subdivisions = 15; // adaptive Gauss-Kronrod recursion depth
  TailHandling tail_handling = TailHandling::USubstitution;
  double truncation_radius = 0.0; // TruncateWithBound only; 0 picks 1e4 b
};

// Deflection as minus the integral of K over the lens region
// {(r, phi) : 0 < phi < pi, r >= b / sin(phi)} bounded by the undeflected ray.
// Requires b > 20M on the black-hole metrics so the region clears r = 2M.
DeflectionResult deflection_gb(MetricId id, const SpacetimeParams& params, double b,
                               const QuadratureConfig& cfg = {});

// Coordinate sector r_min <= r <= r_max, phi_min <= phi <= phi_max, a disk-like
// region whose four corners are right angles in these orthogonal coordinates.
struct SectorRegion {
  double r_min = 0.0;
  double r_max = 0.0;
  double phi_min = 0.0;
  double phi_max = 0.0;
  std::array<double, 4> corner_angles = {pi / 2, pi / 2, pi / 2, pi / 2};
  int euler_char = 1;
};

struct GaussBonnetBreakdown {
  double boundary_integral = 0.0; // oriented integral of kappa_g over the arcs
  double area_integral = 0.0;     // integral of K over the sector
  double corner_sum = 0.0;        // sum of exterior angles pi - theta_j
  double residual = 0.0;          // boundary + area + corners - 2 pi chi
  double error_estimate = 0.0;
  long evaluations = 0;
};

GaussBonnetBreakdown gb_identity(MetricId id, const SpacetimeParams& params,
                                 const SectorRegion& region, const QuadratureConfig& cfg = {});

// Convenience: gb_identity(...).residual
double gb_residual(MetricId id, const SpacetimeParams& params, const SectorRegion& region,
                   const QuadratureConfig& cfg = {});

} // namespace gblens
