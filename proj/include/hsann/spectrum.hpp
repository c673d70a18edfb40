#pragma once

#include <vector>

#include "hsann/harmonics.hpp"
#include "hsann/params.hpp"

namespace hsann {

/// Closed-form per-degree multipliers of the linearized flow about the
/// concentric stationary annulus (outer radius R, inner radius K = (mu/gamma)R),
/// written with q = K/R = mu/gamma and m = 2k+n-2:
///
///   A_k      = (lambda_k - n + 1)/(n - 1)                  (zero at k=1)
///   b1_k     = -(mu/K^2) A_k (k q^m + k+n-2)/(1 - q^m)     inner-shape block
///   s12_k    =  (gamma/R^2) A_k (k + (k+n-2) q^m)/(1-q^m)  outer-data response
///   s13_k    = -(mu/K^2) A_k (2k+n-2) q^{k+n-1}/(1-q^m)    inner-data response
///   drhoP_k  =  (gamma/R^2) A_k (2k+n-2) q^{k-1}/(1-q^m)   outer->inner coupling
///   g1_k     =  (2k+n-2) q^k / (k q^m + k+n-2)             inner/outer shape ratio
///   mu_k     = -(gamma/R^2) A_k k(k+n-2)(1-q^m)/(k q^m + k+n-2),  k >= 2
///
/// with mu_0 = mu_1 = 0 (dilation-family and translation kernel), g1_0 = 1
/// (a dilated outer sphere dilates the inner one), g1_1 = R/K (a translated
/// outer sphere translates the inner one; relative amplitudes scale by R/K),
/// and the k=0, n=2 entries taken as the analytic log limits
/// (n-2)/(1-q^{n-2}) -> 1/ln(R/K).
///
/// All symbols except g1 carry units of pressure gradient (gamma/length^2);
/// g1 is dimensionless.  Raw cosine/sine amplitudes are used throughout the
/// n=2 code; sigma_n (area of the unit sphere) is stored so the conversion
/// factor sqrt(n/sigma_n) to L2-normalized degree-1 harmonics lives in
/// exactly one place.
struct MultiplierTable {
  int n = 2;
  double gamma = 1.0, mu = 0.5, R = 1.0, K = 0.5;
  double sigma_n = 0.0;
  int k_max = 2;
  std::vector<double> lambda;  // -Laplace-Beltrami eigenvalues, size k_max+1
  std::vector<double> d;       // harmonic-space dimensions
  std::vector<double> mu_k;    // decay rate of degree k (velocity units)
  std::vector<double> b1;      // diagonal of the inner-shape Jacobian block
  std::vector<double> drhoP;   // outer-shape -> inner-mismatch coupling
  std::vector<double> s12;     // mismatch response to outer Dirichlet data
  std::vector<double> s13;     // mismatch response to inner Dirichlet data
  std::vector<double> g1;      // linearized inner/outer shape ratio
};

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Decay rate of degree k about the stationary annulus, direct closed form.
/// Zero for k in {0,1}; also zero in the mu=gamma limit.
double mu_closed_form(int k, const ProblemParams& p);

/// Fill every per-degree symbol for k = 0..k_max.
MultiplierTable multiplier_table(const ProblemParams& p, int k_max);

/// Decay rate of degree k assembled from the coupling symbols,
/// -(s12_k + s13_k * g1_k); must agree with mu_closed_form.
double mu_assembled(int k, const MultiplierTable& t);

/// Measured linearization rate of the semi-discrete flow in one mode
/// direction: project vector_field(eps * e_m)/eps onto mode m, and report
/// the L2 norm of everything that leaked into other modes.
struct ModeCheck {
  double rate = 0.0;
  double leakage = 0.0;
};
ModeCheck jacobian_mode_check(ModeIndex m, double eps, const ProblemParams& p);

}  // namespace hsann
