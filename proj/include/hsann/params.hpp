#pragma once

#include <cmath>

#include "hsann/errors.hpp"

namespace hsann {

/// How the implicit inner-boundary problem is solved.
///  - fd_jacobian: damped Newton with a dense forward-difference Jacobian
///    (most transparent; quadratically convergent).
///  - precond: frozen-Jacobian iteration using the closed-form diagonal
///    inverse of the linearization at the concentric state (one elliptic
///    solve per iteration; falls back to fd_jacobian if contraction stalls).
enum class NewtonMode { fd_jacobian, precond };

/// Physical constants and numerical controls for the two-free-surface
/// Hele-Shaw problem on an annulus.  The stationary family ties the inner
/// radius to the outer one: gamma/R = mu_inner/K, i.e. K = (mu_inner/gamma)*R.
struct ProblemParams {
  // Physics.
  int n = 2;                ///< ambient dimension (nonlinear pipeline: n=2 only)
  double gamma = 1.0;       ///< outer surface-tension coefficient
  double mu_inner = 0.5;    ///< inner surface-tension coefficient (0 < mu_inner < gamma)
  double R = 1.0;           ///< reference outer radius

  // Discretization.
  int k_max = 32;           ///< harmonic truncation of surface perturbations
  int n_theta = 256;        ///< uniform angular grid size (>= 4(k_max+1))
  int K_u = -1;             ///< potential-series truncation; -1 means k_max
  double over_collocation = 2.0;  ///< collocation points per boundary = oc*(4K_u+2)

  // Solver controls.
  double newton_tol = 1e-10;      ///< inner-problem residual sup-norm target
  double fd_step = 1e-6;          ///< forward-difference step for Jacobians
  int newton_max_iters = 50;
  NewtonMode newton_mode = NewtonMode::fd_jacobian;

  // Time integration.
  double stat_tol = 1e-9;   ///< stationarity threshold on the vector field sup-norm
  double step_tol = 1e-8;   ///< step-doubling error tolerance per step

  /// Stationary inner radius K = (mu_inner/gamma) R.
  double K_ref() const { return mu_inner / gamma * R; }

  int series_degree() const { return K_u > 0 ? K_u : k_max; }

  void validate() const {
    require(n >= 2, "invalid-dimension", "ambient dimension must be >= 2");
    require(gamma > 0.0 && mu_inner > 0.0 && mu_inner < gamma, "invalid-params",
            "need 0 < mu_inner < gamma");
    require(R > 0.0, "invalid-params", "reference radius must be positive");
    require(k_max >= 2, "invalid-params", "k_max must be >= 2");
    require(n_theta >= 4 * (k_max + 1), "aliasing-risk",
            "n_theta must be >= 4(k_max+1)");
  }
};

}  // namespace hsann
