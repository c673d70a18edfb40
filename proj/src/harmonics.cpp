// Harmonic basis on the circle / the (n-1)-sphere: eigenvalue and
// multiplicity tables for all n, and exact trigonometric transforms between
// uniform grids and coefficient vectors for n=2.  Transforms use direct
// summation with the uniform-grid trapezoid/DFT pairing, which is spectrally
// exact for periodic band-limited data; sizes here never justify an FFT.

#include "hsann/harmonics.hpp"

#include <cmath>

namespace hsann {

std::size_t SurfaceCoeffs::flat_index(ModeIndex m) {
  require(m.k >= 0, "invalid-mode", "degree must be nonnegative");
  if (m.k == 0) {
    require(m.l == 1, "invalid-mode", "degree 0 has a single mode");
    return 0;
  }
  require(m.l == 1 || m.l == 2, "invalid-mode", "n=2 degrees have two modes");
  return static_cast<std::size_t>(2 * m.k - 2 + m.l);
}

double SurfaceCoeffs::max_abs() const {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

double mode_eigenvalue(int k, int n) {
  require(n >= 2, "invalid-dimension", "ambient dimension must be >= 2");
  require(k >= 0, "invalid-mode", "degree must be nonnegative");
  return static_cast<double>(k) * k + static_cast<double>(n - 2) * k;
}

namespace {
// C(a, b) in exact integer arithmetic; small arguments only (a <= ~80 here).
long long binomial(long long a, long long b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  long long r = 1;
  for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}
}  // namespace

long long mode_multiplicity(int k, int n) {
  require(n >= 2, "invalid-dimension", "ambient dimension must be >= 2");
  require(k >= 0, "invalid-mode", "degree must be nonnegative");
  if (k == 0) return 1;
  if (k == 1) return n;
  return binomial(n + k - 1, k) - binomial(n + k - 3, k - 2);
}

std::vector<double> uniform_angles(int N) {
  require(N >= 1, "invalid-grid", "grid size must be positive");
  std::vector<double> th(N);
  const double step = 2.0 * M_PI / N;
  for (int j = 0; j < N; ++j) th[j] = step * j;
  return th;
}

SurfaceCoeffs analyze(const std::vector<double>& grid, int k_max) {
  const int N = static_cast<int>(grid.size());
  require(N >= 4 * (k_max + 1), "aliasing-risk",
          "grid too small for requested truncation: need N >= 4(k_max+1)");
  for (double v : grid)
    require(std::isfinite(v), "invalid-grid", "grid values must be finite");

  SurfaceCoeffs out(k_max);
  const double step = 2.0 * M_PI / N;
  double mean = 0.0;
  for (double v : grid) mean += v;
  out.c[0] = mean / N;
  for (int k = 1; k <= k_max; ++k) {
    double ac = 0.0, as = 0.0;
    for (int j = 0; j < N; ++j) {
      const double a = step * j * k;
      ac += grid[j] * std::cos(a);
      as += grid[j] * std::sin(a);
    }
    out.c[2 * k - 1] = 2.0 * ac / N;
    out.c[2 * k] = 2.0 * as / N;
  }
  return out;
}

std::vector<double> synthesize(const SurfaceCoeffs& coeffs, int N) {
  std::vector<double> grid, *g = &grid;
  synthesize_at(coeffs, uniform_angles(N), g);
  return grid;
}

void synthesize_at(const SurfaceCoeffs& coeffs, const std::vector<double>& angles,
                   std::vector<double>* value, std::vector<double>* d1,
                   std::vector<double>* d2) {
  const std::size_t M = angles.size();
  if (value) value->assign(M, coeffs.c[0]);
  if (d1) d1->assign(M, 0.0);
  if (d2) d2->assign(M, 0.0);
  for (int k = 1; k <= coeffs.k_max; ++k) {
    const double ac = coeffs.c[2 * k - 1];
    const double as = coeffs.c[2 * k];
    if (ac == 0.0 && as == 0.0) continue;
    for (std::size_t j = 0; j < M; ++j) {
      const double a = k * angles[j];
      const double ck = std::cos(a), sk = std::sin(a);
      if (value) (*value)[j] += ac * ck + as * sk;
      if (d1) (*d1)[j] += k * (-ac * sk + as * ck);
      if (d2) (*d2)[j] -= static_cast<double>(k) * k * (ac * ck + as * sk);
    }
  }
}

void evaluate_at(const SurfaceCoeffs& coeffs, double angle, double* value,
                 double* d1) {
  double v = coeffs.c[0], d = 0.0;
  for (int k = 1; k <= coeffs.k_max; ++k) {
    const double ac = coeffs.c[2 * k - 1];
    const double as = coeffs.c[2 * k];
    if (ac == 0.0 && as == 0.0) continue;
    const double a = k * angle;
    const double ck = std::cos(a), sk = std::sin(a);
    v += ac * ck + as * sk;
    d += k * (-ac * sk + as * ck);
  }
  if (value) *value = v;
  if (d1) *d1 = d;
}

std::vector<double> trig_interpolate(const std::vector<double>& grid,
                                     const std::vector<double>& angles) {
  const int N = static_cast<int>(grid.size());
  require(N >= 4, "invalid-grid", "interpolation grid too small");
  const int kc = (N - 1) / 2;  // even N: Nyquist mode dropped (data-free here)
  const double step = 2.0 * M_PI / N;
  std::vector<double> out(angles.size());
  double mean = 0.0;
  for (double v : grid) {
    require(std::isfinite(v), "invalid-grid", "grid values must be finite");
    mean += v;
  }
  mean /= N;
  for (double& v : out) v = mean;
  for (int k = 1; k <= kc; ++k) {
    double ac = 0.0, as = 0.0;
    for (int j = 0; j < N; ++j) {
      const double a = step * j * k;
      ac += grid[j] * std::cos(a);
      as += grid[j] * std::sin(a);
    }
    ac *= 2.0 / N;
    as *= 2.0 / N;
    for (std::size_t j = 0; j < angles.size(); ++j) {
      const double a = k * angles[j];
      out[j] += ac * std::cos(a) + as * std::sin(a);
    }
  }
  return out;
}

SurfaceCoeffs laplace_beltrami(const SurfaceCoeffs& coeffs, int n) {
  SurfaceCoeffs out = coeffs;
  out.c[0] = 0.0;  // lambda_0 = 0
  for (int k = 1; k <= coeffs.k_max; ++k) {
    const double lam = mode_eigenvalue(k, n);
    out.c[2 * k - 1] = -lam * coeffs.c[2 * k - 1];
    out.c[2 * k] = -lam * coeffs.c[2 * k];
  }
  return out;
}

ModeEnergies mode_energies(const SurfaceCoeffs& coeffs) {
  ModeEnergies e;
  e.e0 = coeffs.c[0] * coeffs.c[0];
  if (coeffs.k_max >= 1)
    e.e1 = coeffs.c[1] * coeffs.c[1] + coeffs.c[2] * coeffs.c[2];
  for (int k = 2; k <= coeffs.k_max; ++k)
    e.e_high += coeffs.c[2 * k - 1] * coeffs.c[2 * k - 1] + coeffs.c[2 * k] * coeffs.c[2 * k];
  return e;
}

}  // namespace hsann
