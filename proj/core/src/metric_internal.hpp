#pragma once

#include "gblens/types.hpp"

// Unvalidated closed forms shared by the metric catalog and the geodesic RHS.
// Total for r > 0 away from r = 2M and Delta = 0; callers own domain checks.
// ODE trial steps may probe slightly outside the physical domain, where these
// stay finite and the step controller discards the result.
namespace gblens::detail {

struct LogJet {
  double E = 0.0, G = 0.0;
  double LE = 0.0, LG = 0.0;   // E_r / E, G_r / G
  double LEp = 0.0, LGp = 0.0; // d/dr of the above
};

inline LogJet log_jet(MetricId id, const SpacetimeParams& params, double r) {
  LogJet j;
  const double M = params.mass;
  switch (id) {
  case MetricId::Flat:
    j.E = 1.0;
    j.G = r * r;
    j.LG = 2.0 / r;
    j.LGp = -2.0 / (r * r);
    break;
  case MetricId::SchwarzschildOptical: {
    const double w = r - 2.0 * M;
    j.E = r * r / (w * w);
    j.G = r * r * r / w;
    j.LE = 2.0 / r - 2.0 / w;
    j.LEp = -2.0 / (r * r) + 2.0 / (w * w);
    j.LG = 3.0 / r - 1.0 / w;
    j.LGp = -3.0 / (r * r) + 1.0 / (w * w);
    break;
  }
  case MetricId::KerrReducedOptical: {
    const double a = params.spin;
    const double w = r - 2.0 * M;
    const double delta = r * r - 2.0 * M * r + a * a;
    const double dd = 2.0 * (r - M); // Delta_r; Delta_rr = 2
    j.E = r * r * r / (delta * w);
    j.G = r * r * delta / (w * w);
    j.LE = 3.0 / r - dd / delta - 1.0 / w;
    j.LEp = -3.0 / (r * r) - 2.0 / delta + dd * dd / (delta * delta) + 1.0 / (w * w);
    j.LG = 2.0 / r + dd / delta - 2.0 / w;
    j.LGp = -2.0 / (r * r) + 2.0 / delta - dd * dd / (delta * delta) + 2.0 / (w * w);
    break;
  }
  }
  return j;
}

} // namespace gblens::detail
