#pragma once

#include "gblens/types.hpp"

namespace gblens {

// Index order is (0, 1) = (r, phi); gamma[l][m][n] = Gamma^l_{mn}.
struct ChristoffelSymbols {
  double gamma[2][2][2] = {};

  double operator()(int l, int m, int n) const { return gamma[l][m][n]; }
};

enum class CurvatureMethod { RiemannTensor, Liouville, ClosedForm };

struct CurvatureSample {
  Point point;
  double K = 0.0;
  CurvatureMethod method = CurvatureMethod::ClosedForm;
};

// Finite-difference step h = max(1e-6 r, 1e-8 M) used by the numerical routes.
double curvature_fd_step(const SpacetimeParams& params, const Point& p);

// Exact symbols from the closed-form metric derivatives.
ChristoffelSymbols christoffel(MetricId id, const SpacetimeParams& params, const Point& p);

// R^r_{phi r phi} lowered with g_rr, via central differences of the symbols.
// Refuses points with r < 2M + 10h where the stencil would leave the domain.
double riemann_1212(MetricId id, const SpacetimeParams& params, const Point& p);

// K = R_{r phi r phi} / det g
double gauss_curvature(MetricId id, const SpacetimeParams& params, const Point& p);

// Liouville's formula for F = 0 charts,
// K = -1/(2 sqrt(EG)) [ d/dphi (E_phi / sqrt(EG)) + d/dr (G_r / sqrt(EG)) ],
// with the outer derivatives taken by central differences.
double gauss_curvature_liouville(MetricId id, const SpacetimeParams& params, const Point& p);

// Exact K: 0 for Flat, M(3M - 2r)/r^4 for Schwarzschild, and
// M (6a^2 (r - M) + r (6M^2 - 7Mr + 2r^2)) / ((2M - r) r^5) for reduced Kerr.
double closed_form_gauss_curvature(MetricId id, const SpacetimeParams& params, const Point& p);

double gauss_curvature_by(CurvatureMethod method, MetricId id, const SpacetimeParams& params,
                          const Point& p);

} // namespace gblens
