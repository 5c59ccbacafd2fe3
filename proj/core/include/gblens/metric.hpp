#pragma once

#include <optional>
#include <string_view>

#include "gblens/types.hpp"

namespace gblens {

// Throws domain_error unless (params, p) lies in the metric's domain:
// r > 0 for Flat, r > 2M (and Delta > 0 for Kerr) otherwise.
void validate_point(MetricId id, const SpacetimeParams& params, const Point& p);

MetricComponents eval_metric(MetricId id, const SpacetimeParams& params, const Point& p);

// Closed-form first and second partials; the catalog depends on r only,
// so every phi partial is exactly zero.
MetricDerivatives eval_metric_derivatives(MetricId id, const SpacetimeParams& params,
                                          const Point& p);

// sqrt(EG - F^2)
double area_element(const MetricComponents& c);

// Randers one-form magnitude beta_phi = -2Ma/(r - 2M) of the full Kerr optical
// geometry. Reported for diagnostics; no operation below consumes it.
double randers_beta(const SpacetimeParams& params, const Point& p);

std::string_view to_string(MetricId id);
std::optional<MetricId> metric_from_string(std::string_view name);

} // namespace gblens
