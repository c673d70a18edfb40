#pragma once

#include "hsann/evolution.hpp"
#include "hsann/geometry.hpp"
#include "hsann/params.hpp"

namespace hsann {

/// Result of the symmetry suite: how far evolving a transformed initial
/// surface strays from transforming the evolved one, in absolute radius
/// units, together with the transform parameters and the tolerances the
/// errors were judged against.
struct InvarianceReport {
  double translation_error = 0.0;
  double dilation_error = 0.0;
  Vec2 z{0.0, 0.0};
  double lambda = 1.0;
  double translation_tol = 1e-6;
  double dilation_tol = 1e-6;
};

/// Predicted end state of a run: the limiting outer and inner spheres, the
/// fitted decay rate of the high-mode energy, and terminal-state
/// measurements for cross-checks.
struct LimitPrediction {
  SphereData outer;
  SphereData inner;
  double fitted_rate = 0.0;
  double fit_residual = 0.0;
  Vec2 terminal_centroid{0.0, 0.0};   // measured on the last snapshot
  double terminal_radius = 0.0;       // circle fit of the last snapshot
  double terminal_high_energy = 0.0;  // k>=2 energy of the last snapshot
};

/// Least-squares exponential decay rate of the k>=2 energy over the final
/// decade of its decay (slope of log E^{1/2} vs t).  Positive for decay.
/// Requires at least 10 samples above 100x machine epsilon.
std::pair<double, double> fit_decay_rate(const Trajectory& traj);

/// Interpolate a trajectory's coefficients at an off-grid time (cubic
/// Lagrange on the four nearest snapshots; exact at the nodes).
SurfaceCoeffs interpolate_state(const Trajectory& traj, double t);

/// Predict the limiting spheres of a run from conservation (outer radius
/// from the initial enclosed area) plus exponential extrapolation of the
/// centroid series, then simulate and record the terminal measurements.
/// t_max <= 0 selects 10 / |mu_2| in chart-rate units; the trajectory can be
/// captured through out_traj.
LimitPrediction predict_limit(const SurfaceCoeffs& rho0, const ProblemParams& p,
                              Trajectory* out_traj = nullptr, double t_max = 0.0);

/// Run the base, translated, and dilated simulations and compare surfaces:
/// translation at equal times; dilation at times rescaled by lambda^3 (a
/// lambda-dilated solution runs slower by lambda^{-3}).
InvarianceReport invariance_suite(const SurfaceCoeffs& rho0, const Vec2& z,
                                  double lambda, double T,
                                  const ProblemParams& p);

/// Shooting construction of a stable-manifold point: adjust the three low
/// modes (constant and both degree-1 amplitudes) of `pert` by frozen-Jacobian
/// Newton until the predicted limit equals the target sphere.  The k>=2
/// content of `pert` is kept fixed.
SurfaceCoeffs stable_manifold_point(const SurfaceCoeffs& pert,
                                    const SphereData& target,
                                    const ProblemParams& p);

}  // namespace hsann
