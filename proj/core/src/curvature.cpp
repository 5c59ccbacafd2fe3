#include "gblens/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gblens/metric.hpp"

namespace gblens {

namespace {

void check_fd_window(MetricId id, const SpacetimeParams& params, const Point& p, double h) {
  if (id != MetricId::Flat && p.r < 2.0 * params.mass + 10.0 * h)
    throw domain_error("r = " + std::to_string(p.r) +
                       " is too close to the horizon for a finite-difference stencil of step " +
                       std::to_string(h));
  if (p.r - h <= 0.0)
    throw domain_error("finite-difference stencil would cross r = 0");
}

} // namespace

double curvature_fd_step(const SpacetimeParams& params, const Point& p) {
  return std::max(1e-6 * p.r, 1e-8 * params.mass);
}

ChristoffelSymbols christoffel(MetricId id, const SpacetimeParams& params, const Point& p) {
  const MetricComponents c = eval_metric(id, params, p);
  const MetricDerivatives d = eval_metric_derivatives(id, params, p);

  const double det = c.det();
  const double inv[2][2] = {{c.G / det, -c.F / det}, {-c.F / det, c.E / det}};
  // dg[k][i][j] = partial_k g_ij with k in {r, phi}
  const double dg[2][2][2] = {
      {{d.E_r, d.F_r}, {d.F_r, d.G_r}},
      {{d.E_phi, d.F_phi}, {d.F_phi, d.G_phi}},
  };

  ChristoffelSymbols out;
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) {
        double s = 0.0;
        for (int k = 0; k < 2; ++k)
          s += inv[l][k] * (dg[n][k][m] + dg[m][k][n] - dg[k][m][n]);
        out.gamma[l][m][n] = 0.5 * s;
      }
  return out;
}

double riemann_1212(MetricId id, const SpacetimeParams& params, const Point& p) {
  const double h = curvature_fd_step(params, p);
  check_fd_window(id, params, p, h);

  const ChristoffelSymbols gp = christoffel(id, params, {p.r + h, p.phi});
  const ChristoffelSymbols gm = christoffel(id, params, {p.r - h, p.phi});
  const ChristoffelSymbols fp = christoffel(id, params, {p.r, p.phi + h});
  const ChristoffelSymbols fm = christoffel(id, params, {p.r, p.phi - h});
  const ChristoffelSymbols g0 = christoffel(id, params, p);

  // dG[k][l][m][n] = partial_k Gamma^l_{mn}
  double dG[2][2][2][2];
  double max_dphi = 0.0;
  for (int l = 0; l < 2; ++l)
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) {
        dG[0][l][m][n] = (gp.gamma[l][m][n] - gm.gamma[l][m][n]) / (2.0 * h);
        dG[1][l][m][n] = (fp.gamma[l][m][n] - fm.gamma[l][m][n]) / (2.0 * h);
        max_dphi = std::max(max_dphi, std::abs(dG[1][l][m][n]));
      }
  // The catalog is phi-independent, so these differences are identically zero.
  if (max_dphi > 1e-10)
    throw tolerance_error("phi derivatives of the Christoffel symbols are not negligible: " +
                          std::to_string(max_dphi));

  // R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
  //           + Gamma^a_{ck} Gamma^k_{db} - Gamma^a_{dk} Gamma^k_{cb}
  const int a = 0, b = 1, cc = 0, dd = 1;
  double up = dG[cc][a][dd][b] - dG[dd][a][cc][b];
  for (int k = 0; k < 2; ++k)
    up += g0.gamma[a][cc][k] * g0.gamma[k][dd][b] - g0.gamma[a][dd][k] * g0.gamma[k][cc][b];

  // Lower the first index; g_{r phi} = 0 throughout the catalog.
  return eval_metric(id, params, p).E * up;
}

double gauss_curvature(MetricId id, const SpacetimeParams& params, const Point& p) {
  const MetricComponents c = eval_metric(id, params, p);
  return riemann_1212(id, params, p) / c.det();
}

double gauss_curvature_liouville(MetricId id, const SpacetimeParams& params, const Point& p) {
  const double h = curvature_fd_step(params, p);
  check_fd_window(id, params, p, h);

  const auto radial_term = [&](double r) {
    const Point q{r, p.phi};
    const MetricComponents c = eval_metric(id, params, q);
    const MetricDerivatives d = eval_metric_derivatives(id, params, q);
    return d.G_r / std::sqrt(c.E * c.G);
  };
  const auto angular_term = [&](double phi) {
    const Point q{p.r, phi};
    const MetricComponents c = eval_metric(id, params, q);
    const MetricDerivatives d = eval_metric_derivatives(id, params, q);
    return d.E_phi / std::sqrt(c.E * c.G);
  };

  const double d_r = (radial_term(p.r + h) - radial_term(p.r - h)) / (2.0 * h);
  const double d_phi = (angular_term(p.phi + h) - angular_term(p.phi - h)) / (2.0 * h);

  const MetricComponents c = eval_metric(id, params, p);
  return -(d_phi + d_r) / (2.0 * std::sqrt(c.E * c.G));
}

double closed_form_gauss_curvature(MetricId id, const SpacetimeParams& params, const Point& p) {
  validate_point(id, params, p);
  const double r = p.r;
  const double M = params.mass;
  switch (id) {
  case MetricId::Flat:
    return 0.0;
  case MetricId::SchwarzschildOptical:
    return M * (3.0 * M - 2.0 * r) / (r * r * r * r);
  case MetricId::KerrReducedOptical: {
    const double a = params.spin;
    const double num =
        M * (6.0 * a * a * (r - M) + r * (6.0 * M * M - 7.0 * M * r + 2.0 * r * r));
    return num / ((2.0 * M - r) * r * r * r * r * r);
  }
  }
  return 0.0;
}

double gauss_curvature_by(CurvatureMethod method, MetricId id, const SpacetimeParams& params,
                          const Point& p) {
  switch (method) {
  case CurvatureMethod::RiemannTensor:
    return gauss_curvature(id, params, p);
  case CurvatureMethod::Liouville:
    return gauss_curvature_liouville(id, params, p);
  case CurvatureMethod::ClosedForm:
    return closed_form_gauss_curvature(id, params, p);
  }
  return 0.0;
}

} // namespace gblens
