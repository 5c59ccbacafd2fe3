#include "gblens/metric.hpp"

#include <cmath>
#include <string>

#include "metric_internal.hpp"

namespace gblens {

namespace {

[[noreturn]] void fail(const std::string& what) { throw domain_error(what); }

void validate_params(const SpacetimeParams& params) {
  if (!std::isfinite(params.mass) || params.mass < 0.0)
    fail("mass must be finite and >= 0, got " + std::to_string(params.mass));
  if (!std::isfinite(params.spin))
    fail("spin must be finite, got " + std::to_string(params.spin));
}

} // namespace

void validate_point(MetricId id, const SpacetimeParams& params, const Point& p) {
  validate_params(params);
  if (!std::isfinite(p.r) || !std::isfinite(p.phi))
    fail("point coordinates must be finite");
  if (p.r <= 0.0)
    fail("r must be positive, got " + std::to_string(p.r));
  if (id == MetricId::Flat)
    return;
  const double M = params.mass;
  if (p.r <= 2.0 * M)
    fail("r = " + std::to_string(p.r) + " is inside the optical domain boundary r = 2M = " +
         std::to_string(2.0 * M));
  if (id == MetricId::KerrReducedOptical) {
    const double a = params.spin;
    const double delta = p.r * p.r - 2.0 * M * p.r + a * a;
    if (delta <= 0.0)
      fail("Delta = r^2 - 2Mr + a^2 must be positive, got " + std::to_string(delta));
  }
}

MetricComponents eval_metric(MetricId id, const SpacetimeParams& params, const Point& p) {
  validate_point(id, params, p);
  const detail::LogJet j = detail::log_jet(id, params, p.r);
  return {j.E, 0.0, j.G};
}

MetricDerivatives eval_metric_derivatives(MetricId id, const SpacetimeParams& params,
                                          const Point& p) {
  validate_point(id, params, p);
  const detail::LogJet j = detail::log_jet(id, params, p.r);
  MetricDerivatives d;
  d.E_r = j.E * j.LE;
  d.G_r = j.G * j.LG;
  d.E_rr = j.E * (j.LE * j.LE + j.LEp);
  d.G_rr = j.G * (j.LG * j.LG + j.LGp);
  // r-only catalog: phi and mixed partials stay exactly zero.
  return d;
}

double area_element(const MetricComponents& c) {
  const double det = c.det();
  if (!(det > 0.0))
    throw domain_error("metric is not Riemannian: EG - F^2 = " + std::to_string(det));
  return std::sqrt(det);
}

double randers_beta(const SpacetimeParams& params, const Point& p) {
  validate_point(MetricId::KerrReducedOptical, params, p);
  return -2.0 * params.mass * params.spin / (p.r - 2.0 * params.mass);
}

std::string_view to_string(MetricId id) {
  switch (id) {
  case MetricId::Flat:
    return "flat";
  case MetricId::SchwarzschildOptical:
    return "schwarzschild";
  case MetricId::KerrReducedOptical:
    return "kerr";
  }
  return "unknown";
}

std::optional<MetricId> metric_from_string(std::string_view name) {
  if (name == "flat")
    return MetricId::Flat;
  if (name == "schwarzschild")
    return MetricId::SchwarzschildOptical;
  if (name == "kerr")
    return MetricId::KerrReducedOptical;
  return std::nullopt;
}

} // namespace gblens
