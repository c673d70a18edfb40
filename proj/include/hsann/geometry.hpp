#pragma once

#include <array>
#include <vector>

#include "hsann/harmonics.hpp"

namespace hsann {

using Vec2 = std::array<double, 2>;

/// Star-shaped surface given as a radial graph about the origin:
///   f(theta) = R_ref * (1 + rho(theta)),
/// with rho a truncated trigonometric series (n=2 chart).
struct RadialSurface {
  double R_ref = 1.0;
  SurfaceCoeffs rho;
  int n = 2;

  RadialSurface() = default;
  RadialSurface(double R, SurfaceCoeffs r, int dim = 2)
      : R_ref(R), rho(std::move(r)), n(dim) {}
};

/// A sphere (circle at n=2) by center and radius.
struct SphereData {
  Vec2 center{0.0, 0.0};
  double radius = 1.0;
};

/// Radius grid and derivatives of a surface at N uniform angles (exact
/// synthesis from the coefficients; evaluating on a finer grid than the
/// coefficient band limit is the zero-padding used before pointwise
/// nonlinear combinations).
void radius_grids(const RadialSurface& s, int N, std::vector<double>& f,
                  std::vector<double>& f1, std::vector<double>& f2);

/// Curvature of a radial graph from value/derivative grids:
///   kappa = (f^2 + 2 f'^2 - f f'') / (f^2 + f'^2)^{3/2};
/// equals 1/R on a circle of radius R, positive for convex curves.
std::vector<double> curvature(const std::vector<double>& f,
                              const std::vector<double>& f1,
                              const std::vector<double>& f2);

/// Curvature grid of a surface at N uniform angles.
std::vector<double> curvature_grid(const RadialSurface& s, int N);

/// Integral of g over the curve r = f(theta): trapezoid sum of
/// g * sqrt(f^2 + f'^2) d theta (n=2; the |r|^{n-2} factor is 1).
double surface_integral(const std::vector<double>& g, const std::vector<double>& f,
                        const std::vector<double>& f1, int n = 2);

/// Enclosed area, (1/2) integral of f^2 d theta, computed exactly from the
/// coefficients (Parseval).
double enclosed_volume(const RadialSurface& s);

/// Arclength-weighted centroid of the curve.
Vec2 surface_centroid(const RadialSurface& s, int N = 0);

/// The translated surface {x + z : x in s}, re-expressed as a radial graph
/// about the origin by a per-angle 1-D root solve (tolerance 1e-12).
RadialSurface translate_resample(const RadialSurface& s, const Vec2& z, int N = 0);

/// The dilated surface {lambda x : x in s} in the same chart (same R_ref):
/// 1 + rho~ = lambda (1 + rho).
RadialSurface dilate(const RadialSurface& s, double lambda);

/// Mode-k coefficient of the curvature linearization about a sphere of the
/// given radius: d kappa = (lambda_k - (n-1)) / ((n-1) * radius) per unit
/// relative perturbation.
double curvature_linearization_symbol(int k, double radius, int n);

/// Geometric circle fit: center = centroid, radius = arclength-mean of the
/// distance to it.
SphereData fit_sphere(const RadialSurface& s, int N = 0);

/// Sup distance between the radius functions of two surfaces on a common
/// angular grid (absolute, in length units).
double sup_radius_distance(const RadialSurface& a, const RadialSurface& b, int N = 0);

}  // namespace hsann
