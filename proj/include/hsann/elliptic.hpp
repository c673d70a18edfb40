#pragma once

#include <vector>

#include "hsann/harmonics.hpp"

namespace hsann {

/// Which boundary of the annulus a trace is taken on.
enum class Side { outer, inner };

/// Truncated Laurent-Fourier series of a harmonic function on a planar
/// annulus:
///   u(r,theta) = alpha0 + beta0 ln(r/r_out)
///              + sum_{k=1}^{K_u} [ gc_k (r/r_out)^k + dc_k (r_in/r)^k ] cos k theta
///              + sum_{k=1}^{K_u} [ gs_k (r/r_out)^k + ds_k (r_in/r)^k ] sin k theta.
/// Each basis function is exactly harmonic; the scaling radii keep all
/// entries O(1) on the boundaries.  Valid between r_min and r_max.
struct HarmonicSeries {
  int K_u = 0;
  double alpha0 = 0.0, beta0 = 0.0;
  std::vector<double> gc, dc, gs, ds;  // index k-1, k = 1..K_u
  double r_out = 1.0, r_in = 0.5;      // basis scaling radii
  double r_min = 0.0, r_max = 0.0;     // validity annulus
  double residual_sup = 0.0;           // sup-norm boundary-fit residual
  double conditioning = 1.0;           // estimated condition number of the fit

  /// Value and polar partial derivatives at one point (checks validity).
  void evaluate(double r, double theta, double* u, double* u_r = nullptr,
                double* u_theta = nullptr) const;

  /// Analytic Laplacian u_rr + u_r/r + u_tt/r^2 from the series (zero up to
  /// roundoff; exercises the evaluation path).
  double laplacian(double r, double theta) const;
};

/// Exact harmonic mode profile on a concentric annulus for any ambient
/// dimension: value(r) = c_grow * G(r) + c_decay * D(r) with
/// G = r^k, D = r^{-(k+n-2)} (the pair (1, ln r) when k=0, n=2).
struct RadialModeProfile {
  int k = 0, n = 2;
  double c_grow = 0.0, c_decay = 0.0;

  double value(double r) const;
  double dvalue(double r) const;
};

/// Least-squares collocation solve of the Dirichlet problem for the Laplace
/// equation on the annulus between the curves r=f_Gamma(theta) and
/// r=f_S(theta) (n=2).  All grids live on the same uniform angular mesh;
/// boundary data are matched at M = over_collocation*(4*K_u+2) resampled
/// points per boundary.
HarmonicSeries solve_dirichlet(const std::vector<double>& f_S,
                               const std::vector<double>& f_Gamma,
                               const std::vector<double>& g_S,
                               const std::vector<double>& g_Gamma, int K_u,
                               double over_collocation = 2.0);

/// Normal derivative of the series on a boundary curve given by radius and
/// derivative grids, with the annulus-outward normal: away from the origin
/// on the outer boundary, toward the origin on the inner boundary.
std::vector<double> neumann_trace(const HarmonicSeries& s,
                                  const std::vector<double>& f,
                                  const std::vector<double>& f1, Side side);

/// Unique harmonic profile of angular degree k on the concentric annulus
/// K < r < R with prescribed boundary values.
RadialModeProfile concentric_mode_solution(int k, int n, double value_inner,
                                           double value_outer, double K, double R);

}  // namespace hsann
