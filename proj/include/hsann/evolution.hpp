#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hsann/geometry.hpp"
#include "hsann/harmonics.hpp"
#include "hsann/inner_solver.hpp"
#include "hsann/params.hpp"
#include "hsann/spectrum.hpp"

namespace hsann {

/// Per-step diagnostics recorded along a trajectory.
struct StepRecord {
  double t = 0.0;
  double volume = 0.0;       // enclosed area of the outer surface
  Vec2 centroid{0.0, 0.0};   // outer-surface centroid
  Vec2 c{0.0, 0.0};          // drift vector of the inner problem
  double field_residual = 0.0;  // sup-norm of the vector-field coefficients
  ModeEnergies energies;
};

/// A simulated outer-surface trajectory: coefficient snapshots at strictly
/// increasing times, one diagnostics record per snapshot, and how the run
/// ended ("stationary", "t_max", or "error:<tag>").
struct Trajectory {
  std::vector<double> times;
  std::vector<SurfaceCoeffs> states;
  std::vector<StepRecord> diagnostics;
  std::string termination;
};

/// Chart representation of the interface velocity: solve the inner problem,
/// take V_n = -(outward normal derivative of u) on the outer surface, and
/// convert to the rate of the relative radius,
///   d rho/dt = V_n sqrt(f^2+f'^2) / (f R_ref),  f = R_ref (1+rho).
/// Optionally returns the full inner solution and accepts a warm start.
SurfaceCoeffs vector_field(const SurfaceCoeffs& rho, const ProblemParams& p,
                           InnerSolution* inner = nullptr,
                           const InnerSolution* warm_start = nullptr);

/// One error-controlled exponential-time-differencing step of size dt.  The
/// linear part diag(mu_k / R) is integrated exactly; the remainder enters
/// through the first-order phi-weight.  The step is compared against two
/// half steps and recursively halved while they disagree by more than
/// step_tol; more than 20 halvings raises a stiffness error.
SurfaceCoeffs etd_step(const SurfaceCoeffs& rho, double dt,
                       const MultiplierTable& table, const ProblemParams& p);

/// Default macro step: 0.1 R / |mu_2|.
double default_time_step(const ProblemParams& p);

using StepSink =
    std::function<void(double t, const SurfaceCoeffs& state, const StepRecord&)>;

/// Integrate from rho0 until t >= t_max or stationarity
/// (field sup-norm < stat_tol).  dt <= 0 selects the default macro step.
/// Numerical failures end the run early with the partial trajectory and an
/// error termination tag.
Trajectory simulate(const SurfaceCoeffs& rho0, double t_max,
                    const ProblemParams& p, const StepSink& emit = nullptr,
                    double dt = 0.0);

}  // namespace hsann
