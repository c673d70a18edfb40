#pragma once

#include <cstddef>
#include <vector>

#include "hsann/errors.hpp"

namespace hsann {

/// Index of one basis mode on the (n-1)-sphere: degree k and position l
/// within the degree, 1 <= l <= d_k.  For n=2 the basis is trigonometric:
/// l=1 <-> cos(k theta), l=2 <-> sin(k theta), and d_0 = 1.
struct ModeIndex {
  int k = 0;
  int l = 1;
};

/// Truncated coefficient vector of a surface perturbation rho(theta) at n=2,
/// stored as raw cosine/sine amplitudes:
///   rho(theta) = c[0] + sum_{k=1}^{k_max} (c[2k-1] cos k theta + c[2k] sin k theta).
/// Length is always 2*k_max+1.  Values are dimensionless (relative radius).
struct SurfaceCoeffs {
  int k_max = 2;
  std::vector<double> c;

  SurfaceCoeffs() : c(5, 0.0) {}
  explicit SurfaceCoeffs(int kmax) : k_max(kmax), c(2 * kmax + 1, 0.0) {
    require(kmax >= 2, "invalid-params", "k_max must be >= 2");
  }

  std::size_t size() const { return c.size(); }

  /// Flat position of mode (k,l); (0,1)->0, (k,1)->2k-1, (k,2)->2k.
  static std::size_t flat_index(ModeIndex m);
  double& at(ModeIndex m) { return c[flat_index(m)]; }
  double at(ModeIndex m) const { return c[flat_index(m)]; }

  /// Max |coefficient|.
  double max_abs() const;
};

/// Eigenvalue of -Laplace-Beltrami on degree-k harmonics of S^{n-1}:
/// lambda_k = k^2 + (n-2)k  (0 for k=0, n-1 for k=1).
double mode_eigenvalue(int k, int n);

/// Dimension of the degree-k harmonic space on S^{n-1}:
/// d_0 = 1, d_1 = n, d_k = C(n+k-1,k) - C(n+k-3,k-2).
long long mode_multiplicity(int k, int n);

/// Uniform angles theta_j = 2 pi j / N, j = 0..N-1.
std::vector<double> uniform_angles(int N);

/// Forward transform: trigonometric-interpolant coefficients of a grid of
/// values at N uniform angles, truncated at k_max.  Exact on band-limited
/// input.  Requires N >= 4(k_max+1).
SurfaceCoeffs analyze(const std::vector<double>& grid, int k_max);

/// Inverse transform: pointwise evaluation at N uniform angles.
std::vector<double> synthesize(const SurfaceCoeffs& coeffs, int N);

/// Evaluate the series and its first/second theta-derivatives at arbitrary
/// angles (exact, direct summation).
void synthesize_at(const SurfaceCoeffs& coeffs, const std::vector<double>& angles,
                   std::vector<double>* value, std::vector<double>* d1 = nullptr,
                   std::vector<double>* d2 = nullptr);

/// Evaluate the series and its first derivative at one angle.
void evaluate_at(const SurfaceCoeffs& coeffs, double angle, double* value,
                 double* d1 = nullptr);

/// Resample a uniform-grid sample to arbitrary angles through its full
/// trigonometric interpolant (all modes up to floor((N-1)/2)); exact for
/// data band-limited below the grid Nyquist frequency.
std::vector<double> trig_interpolate(const std::vector<double>& grid,
                                     const std::vector<double>& angles);

/// Apply the Laplace-Beltrami operator: mode k is multiplied by -lambda_k.
SurfaceCoeffs laplace_beltrami(const SurfaceCoeffs& coeffs, int n);

/// Mode energies: E0 = c0^2, E1 = sum of squared k=1 amplitudes,
/// E_high = sum over k>=2.
struct ModeEnergies {
  double e0 = 0.0, e1 = 0.0, e_high = 0.0;
};
ModeEnergies mode_energies(const SurfaceCoeffs& coeffs);

}  // namespace hsann
