#pragma once

#include <array>

#include "hsann/elliptic.hpp"
#include "hsann/geometry.hpp"
#include "hsann/harmonics.hpp"
#include "hsann/params.hpp"

namespace hsann {

/// Solution of the implicit inner-boundary problem for a given outer shape:
/// the inner boundary eta (relative to K_ref), the drift vector c making the
/// shifted no-flux condition solvable, and the pressure field u.
struct InnerSolution {
  SurfaceCoeffs eta;
  Vec2 c{0.0, 0.0};
  HarmonicSeries u;
  double residual_norm = 0.0;
  int newton_iters = 0;
};

/// Residual of the inner problem at a state (rho, eta, c): the analyzed
/// harmonic coefficients of the flux mismatch on the inner boundary plus the
/// centroid difference between the two surfaces.
struct ResidualP {
  SurfaceCoeffs neumann_mismatch;
  Vec2 centroid_gap{0.0, 0.0};
};

/// Evaluate the residual: solve the Dirichlet problem with curvature data
/// gamma*kappa on the outer surface and mu*kappa on the inner one, then
/// measure (d_nu u - c.nu) on the inner boundary (nu the unit normal
/// pointing away from the origin) and centroid(inner) - centroid(outer).
/// Optionally returns the pressure field.
ResidualP residual(const SurfaceCoeffs& rho, const SurfaceCoeffs& eta,
                   const Vec2& c, const ProblemParams& p,
                   HarmonicSeries* u_out = nullptr);

/// Apply the closed-form inverse of the residual Jacobian at the stationary
/// concentric state, mode by mode: given residual-shaped data (upsilon, b),
/// return the (eta, c) increment solving the linearized system.  Degree-1
/// mismatch is absorbed by c, the centroid rows determine the degree-1 shape,
/// and every other degree divides by its diagonal symbol.
void linearized_inverse_at_zero(const SurfaceCoeffs& upsilon, const Vec2& b,
                                const ProblemParams& p, SurfaceCoeffs* zeta,
                                Vec2* c);

/// Solve the implicit problem for a given outer shape by damped Newton
/// iteration on (eta, c) from (0,0) or a warm start.  NewtonMode::fd_jacobian
/// builds a dense forward-difference Jacobian each iteration;
/// NewtonMode::precond iterates with the frozen stationary-point inverse
/// (one field solve per iteration) and falls back to the dense Jacobian if
/// progress stalls.
InnerSolution solve_inner(const SurfaceCoeffs& rho, const ProblemParams& p,
                          const InnerSolution* warm_start = nullptr);

}  // namespace hsann
