#include "gblens/gauss_bonnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gblens/curvature.hpp"
#include "gblens/geodesic.hpp"
#include "gblens/metric.hpp"

namespace gblens {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;

struct CurvatureDensity {
  MetricId id;
  const SpacetimeParams& params;
  long evals = 0;

  // -K sqrt(EG), the (positive, for these lenses) deflection density
  double operator()(double r, double phi) {
    ++evals;
    const Point p{r, phi};
    const double K = closed_form_gauss_curvature(id, params, p);
    return -K * area_element(eval_metric(id, params, p));
  }
};

// The tolerance each quadrature level is asked for. G7/K15 error reports
// floor near 10 eps in absolute terms; requests below that floor saturate
// the subdivision depth and sum per-panel floors into an inflated estimate
// without improving the value, so they are lifted. The certification below
// still judges the reported error against the caller's full ask.
double requested_rel_tol(double rel_tol) { return std::max(rel_tol / 2, 5e-10); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

void check_tolerance(double err, double value, double rel_tol, double abs_tol) {
  if (err > 10.0 * std::max(rel_tol * std::abs(value), abs_tol))
    throw tolerance_error("quadrature error estimate " + sci(err) +
                          " exceeds the requested tolerance for value " + sci(value));
}

} // namespace

DeflectionResult deflection_gb(MetricId id, const SpacetimeParams& params, double b,
                               const QuadratureConfig& cfg) {
  if (!(b > 0.0) || !std::isfinite(b))
    throw domain_error("impact parameter b must be positive and finite");
  if (id != MetricId::Flat && b <= 20.0 * params.mass)
    throw domain_error("lens region must stay clear of r = 2M; need b > 20M, got b = " +
                       std::to_string(b) + " with M = " + std::to_string(params.mass));
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw domain_error("tolerances must be positive");
  validate_point(id, params, {std::max(b, 1.0), 0.0});

  CurvatureDensity density{id, params};
  const double rel_req = requested_rel_tol(cfg.rel_tol);

  const double r_cut = cfg.tail_handling == TailHandling::TruncateWithBound
                           ? (cfg.truncation_radius > 0.0 ? cfg.truncation_radius : 1e4 * b)
                           : 0.0;
  if (cfg.tail_handling == TailHandling::TruncateWithBound && r_cut <= b)
    throw domain_error("truncation radius must exceed the impact parameter");

  double inner_err_sum = 0.0;
  long inner_calls = 0;

  const auto inner = [&](double phi) {
    const double s = std::sin(phi);
    if (s <= 0.0)
      return 0.0;
    // The radial leg integrates to about 2M s / b, so with the ~10 eps
    // absolute report floor the attainable relative request bottoms out near
    // eps b / (2 M s); lift the ask to keep large b from saturating.
    double req = rel_req;
    if (params.mass > 0.0)
      req = std::max(req, 100.0 * std::numeric_limits<double>::epsilon() * b /
                              (2.0 * params.mass * s));
    double err = 0.0;
    double value;
    // r = 1/u maps the unbounded leg to (0, s/b]; the integrand extends
    // smoothly to u = 0 where it tends to 2M.
    const auto g = [&](double u) { return density(1.0 / u, phi) / (u * u); };
    if (cfg.tail_handling == TailHandling::USubstitution) {
      value = Quad::integrate(g, 0.0, s / b, cfg.max_subdivisions, req, &err);
    } else {
      const double u_cut = 1.0 / r_cut;
      if (s / b <= u_cut)
        return 0.0;
      value = Quad::integrate(g, u_cut, s / b, cfg.max_subdivisions, req, &err);
    }
    inner_err_sum += err;
    ++inner_calls;
    return value;
  };

  double outer_err = 0.0;
  const double angle =
      Quad::integrate(inner, 0.0, pi, cfg.max_subdivisions, rel_req, &outer_err);

  const double inner_err = inner_calls > 0 ? pi * inner_err_sum / inner_calls : 0.0;
  const double quad_err = outer_err + inner_err;
  check_tolerance(quad_err, angle, cfg.rel_tol, cfg.abs_tol);

  DeflectionResult out;
  out.angle = angle;
  out.method = DeflectionMethod::GaussBonnet;
  out.error_estimate = quad_err;
  if (cfg.tail_handling == TailHandling::TruncateWithBound)
    out.error_estimate += pi * 4.0 * params.mass / r_cut; // per-phi tail below 4M/R
  out.evaluations = density.evals;
  return out;
}

GaussBonnetBreakdown gb_identity(MetricId id, const SpacetimeParams& params,
                                 const SectorRegion& region, const QuadratureConfig& cfg) {
  if (!(region.r_min < region.r_max))
    throw domain_error("sector needs r_min < r_max");
  if (!(region.phi_min < region.phi_max) || region.phi_max - region.phi_min >= 2.0 * pi)
    throw domain_error("sector needs 0 < phi_max - phi_min < 2 pi");
  validate_point(id, params, {region.r_min, region.phi_min});
  for (double corner : region.corner_angles)
    if (std::abs(corner - pi / 2) > 1e-12)
      throw domain_error("coordinate sectors have right-angle corners in this catalog");
  if (region.euler_char != 1)
    throw domain_error("sector regions are disks: Euler characteristic must be 1");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw domain_error("tolerances must be positive");

  CurvatureDensity density{id, params};
  const double rel_req = requested_rel_tol(cfg.rel_tol);

  double inner_err_sum = 0.0;
  long inner_calls = 0;
  const auto inner = [&](double phi) {
    double err = 0.0;
    const auto g = [&](double r) { return -density(r, phi); }; // K sqrt(EG)
    const double value = Quad::integrate(g, region.r_min, region.r_max, cfg.max_subdivisions,
                                         rel_req, &err);
    inner_err_sum += err;
    ++inner_calls;
    return value;
  };

  double outer_err = 0.0;
  const double area = Quad::integrate(inner, region.phi_min, region.phi_max,
                                      cfg.max_subdivisions, rel_req, &outer_err);

  const double dphi = region.phi_max - region.phi_min;
  // CCW boundary: the outer arc runs with increasing phi, the inner against
  // it, and the radial sides are geodesics with kappa_g = 0.
  const auto arc = [&](double r) {
    return geodesic_curvature_circle(id, params, r) *
           std::sqrt(eval_metric(id, params, {r, region.phi_min}).G) * dphi;
  };
  const double boundary = arc(region.r_max) - arc(region.r_min);

  double corners = 0.0;
  for (double corner : region.corner_angles)
    corners += pi - corner;

  GaussBonnetBreakdown out;
  out.boundary_integral = boundary;
  out.area_integral = area;
  out.corner_sum = corners;
  out.residual = boundary + area + corners - 2.0 * pi * region.euler_char;
  out.error_estimate = outer_err + (inner_calls > 0 ? dphi * inner_err_sum / inner_calls : 0.0);
  out.evaluations = density.evals;
  check_tolerance(out.error_estimate, area, cfg.rel_tol, cfg.abs_tol);
  return out;
}

double gb_residual(MetricId id, const SpacetimeParams& params, const SectorRegion& region,
                   const QuadratureConfig& cfg) {
  return gb_identity(id, params, region, cfg).residual;
}

} // namespace gblens
