#pragma once

#include <array>
#include <vector>

namespace hsann {

/// Finite-difference state of the insulated-rod heat problem: values on the
/// M+1 equispaced nodes of [0,1] at a given time.
struct HeatState {
  std::vector<double> u;
  double time = 0.0;
};

/// The exactly-solvable planar system x' = 0, y' = -y: its center manifold
/// is the x-axis and its stable fibres are vertical lines.
std::array<double, 2> planar_flow(double x0, double y0, double t);

/// March the heat equation with zero-flux ends to time T on an M-interval
/// grid: centered second differences with mirrored ghost nodes (the closure
/// conserves the trapezoid mean exactly).  Implicit Euler by default;
/// the explicit scheme is accepted only when dt <= h^2/2.
HeatState heat_neumann(const std::vector<double>& u0, double T, int M,
                       double dt, bool implicit_scheme = true);

/// Trapezoid-weighted mean of a node vector (the conserved quantity).
double heat_mean(const std::vector<double>& u);

/// Structure report for the heat flow: general data converge to their mean,
/// the zero-mean part decays at the discrete slowest Neumann rate.
struct HeatReport {
  double initial_mean = 0.0;
  double final_mean = 0.0;
  double limit_sup_error = 0.0;     // sup |u(T) - initial mean|
  double zero_mean_final_norm = 0.0;  // L2 norm of the mean-free part at T
  double decay_rate = 0.0;          // measured from the mean-free L2 norm
  double discrete_rate = 0.0;       // oracle: slowest discrete Neumann rate
};
HeatReport heat_stable_manifold_check(const std::vector<double>& u0, double T,
                                      double dt);

}  // namespace hsann
