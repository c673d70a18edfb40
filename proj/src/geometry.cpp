// Geometry of star-shaped radial graphs: curvature, quadrature, centroids,
// and the rigid-motion operations (translate, dilate) expressed back in the
// radial chart.  Quadrature is the uniform trapezoid rule, which converges
// spectrally for smooth periodic integrands; translation re-expands the
// surface with a per-angle safeguarded Newton root solve.

#include "hsann/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsann/errors.hpp"

namespace hsann {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int default_grid(const RadialSurface& s, int N) {
  if (N > 0) return N;
  return std::max(256, 4 * (s.rho.k_max + 1));
}

}  // namespace

void radius_grids(const RadialSurface& s, int N, std::vector<double>& f,
                  std::vector<double>& f1, std::vector<double>& f2) {
  require(N >= 4, "invalid-grid", "grid size must be at least 4");
  const std::vector<double> ang = uniform_angles(N);
  synthesize_at(s.rho, ang, &f, &f1, &f2);
  for (int j = 0; j < N; ++j) {
    f[j] = s.R_ref * (1.0 + f[j]);
    f1[j] *= s.R_ref;
    f2[j] *= s.R_ref;
    require(f[j] > 0.0, "geometry-breakdown", "radius function is not positive");
  }
}

std::vector<double> curvature(const std::vector<double>& f,
                              const std::vector<double>& f1,
                              const std::vector<double>& f2) {
  require(f.size() == f1.size() && f.size() == f2.size(), "shape",
          "curvature: grid sizes differ");
  std::vector<double> kappa(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    require(f[j] > 0.0, "geometry-breakdown", "radius function is not positive");
    const double g = f[j] * f[j] + f1[j] * f1[j];
    kappa[j] = (f[j] * f[j] + 2.0 * f1[j] * f1[j] - f[j] * f2[j]) /
               (g * std::sqrt(g));
  }
  return kappa;
}

std::vector<double> curvature_grid(const RadialSurface& s, int N) {
  N = default_grid(s, N);
  std::vector<double> f, f1, f2;
  radius_grids(s, N, f, f1, f2);
  return curvature(f, f1, f2);
}

double surface_integral(const std::vector<double>& g, const std::vector<double>& f,
                        const std::vector<double>& f1, int n) {
  require(n == 2, "invalid-dimension", "surface quadrature is implemented for n=2");
  require(g.size() == f.size() && g.size() == f1.size(), "shape",
          "surface_integral: grid sizes differ");
  const int N = static_cast<int>(g.size());
  require(N >= 4, "invalid-grid", "surface_integral: grid too small");
  double acc = 0.0;
  for (int j = 0; j < N; ++j)
    acc += g[j] * std::sqrt(f[j] * f[j] + f1[j] * f1[j]);
  return acc * (kTwoPi / N);
}

double enclosed_volume(const RadialSurface& s) {
  // (1/2) \int f^2 = pi R^2 [ (1+c0)^2 + (1/2) sum_k (a_k^2 + b_k^2) ].
  const SurfaceCoeffs& c = s.rho;
  double sum = (1.0 + c.c[0]) * (1.0 + c.c[0]);
  for (int k = 1; k <= c.k_max; ++k) {
    const double a = c.c[2 * k - 1], b = c.c[2 * k];
    sum += 0.5 * (a * a + b * b);
  }
  return std::numbers::pi * s.R_ref * s.R_ref * sum;
}

Vec2 surface_centroid(const RadialSurface& s, int N) {
  N = default_grid(s, N);
  std::vector<double> f, f1, f2;
  radius_grids(s, N, f, f1, f2);
  const std::vector<double> ang = uniform_angles(N);
  std::vector<double> one(N, 1.0), gx(N), gy(N);
  for (int j = 0; j < N; ++j) {
    gx[j] = f[j] * std::cos(ang[j]);
    gy[j] = f[j] * std::sin(ang[j]);
  }
  const double len = surface_integral(one, f, f1, s.n);
  return {surface_integral(gx, f, f1, s.n) / len,
          surface_integral(gy, f, f1, s.n) / len};
}

RadialSurface translate_resample(const RadialSurface& s, const Vec2& z, int N) {
  N = default_grid(s, N);
  const int Nq = std::max(N, 4 * (s.rho.k_max + 1));
  std::vector<double> f, f1, f2;
  radius_grids(s, Nq, f, f1, f2);
  const double fmin = *std::min_element(f.begin(), f.end());
  const double fmax = *std::max_element(f.begin(), f.end());
  const double znorm = std::hypot(z[0], z[1]);
  require(znorm < fmin, "geometry-breakdown",
          "translation moves the origin outside the surface");

  // For each target angle t find r > 0 with |r w(t) - z| = f(arg(r w(t) - z)),
  // i.e. the point at radius r in direction w(t) lies on the original surface
  // shifted by z.  F(r) = |r w - z| - f(phi(r)) is solved by Newton with a
  // bisection safeguard on a bracket that always contains the root.
  const std::vector<double> ang = uniform_angles(N);
  std::vector<double> radii(N);
  const double tol = 1e-12 * s.R_ref;
  for (int j = 0; j < N; ++j) {
    const double wx = std::cos(ang[j]), wy = std::sin(ang[j]);
    double lo = fmin - znorm, hi = fmax + znorm;
    auto F = [&](double r, double* dF) {
      const double qx = r * wx - z[0], qy = r * wy - z[1];
      const double sdist = std::hypot(qx, qy);
      require(sdist > 0.0, "geometry-breakdown", "translate: ray passes through shift point");
      const double phi = std::atan2(qy, qx);
      double fv, fd;
      evaluate_at(s.rho, phi, &fv, &fd);
      fv = s.R_ref * (1.0 + fv);
      fd *= s.R_ref;
      if (dF) {
        const double ds = (qx * wx + qy * wy) / sdist;
        const double dphi = (qx * wy - qy * wx) / (sdist * sdist);
        *dF = ds - fd * dphi;
      }
      return sdist - fv;
    };
    // Initial guess: radius of the unshifted surface plus the shift component
    // along the ray.
    double r = std::clamp(f[(j * Nq) / N] + z[0] * wx + z[1] * wy, lo, hi);
    double Flo = F(lo, nullptr);
    double Fhi = F(hi, nullptr);
    require(Flo <= 0.0 && Fhi >= 0.0, "geometry-breakdown",
            "translate: surface is not star-shaped about the new origin");
    bool done = false;
    for (int it = 0; it < 100; ++it) {
      double dF = 0.0;
      const double Fr = F(r, &dF);
      if (std::abs(Fr) < tol) {
        done = true;
        break;
      }
      if (Fr > 0.0)
        hi = r;
      else
        lo = r;
      double step = (dF != 0.0) ? Fr / dF : 0.0;
      double rn = r - step;
      if (!(rn > lo && rn < hi) || step == 0.0) rn = 0.5 * (lo + hi);
      r = rn;
    }
    require(done, "geometry-breakdown", "translate: root solve did not converge");
    radii[j] = r;
  }

  std::vector<double> rel(N);
  for (int j = 0; j < N; ++j) rel[j] = radii[j] / s.R_ref - 1.0;
  RadialSurface out;
  out.R_ref = s.R_ref;
  out.n = s.n;
  out.rho = analyze(rel, s.rho.k_max);
  return out;
}

RadialSurface dilate(const RadialSurface& s, double lambda) {
  require(lambda > 0.0, "invalid-params", "dilation factor must be positive");
  RadialSurface out = s;
  // Same chart radius: 1 + rho~ = lambda (1 + rho).
  for (double& v : out.rho.c) v *= lambda;
  out.rho.c[0] += lambda - 1.0;
  const std::vector<double> grid =
      synthesize(out.rho, default_grid(out, 0));
  for (double v : grid)
    require(std::abs(v) < 1.0, "out-of-chart",
            "dilated surface leaves the radial chart");
  return out;
}

double curvature_linearization_symbol(int k, double radius, int n) {
  require(radius > 0.0, "invalid-params", "radius must be positive");
  require(n >= 2 && k >= 0, "invalid-params", "need n >= 2, k >= 0");
  return (mode_eigenvalue(k, n) - (n - 1)) / ((n - 1) * radius);
}

SphereData fit_sphere(const RadialSurface& s, int N) {
  N = default_grid(s, N);
  SphereData out;
  out.center = surface_centroid(s, N);
  std::vector<double> f, f1, f2;
  radius_grids(s, N, f, f1, f2);
  const std::vector<double> ang = uniform_angles(N);
  std::vector<double> one(N, 1.0), dist(N);
  for (int j = 0; j < N; ++j)
    dist[j] = std::hypot(f[j] * std::cos(ang[j]) - out.center[0],
                         f[j] * std::sin(ang[j]) - out.center[1]);
  const double len = surface_integral(one, f, f1, s.n);
  out.radius = surface_integral(dist, f, f1, s.n) / len;
  return out;
}

double sup_radius_distance(const RadialSurface& a, const RadialSurface& b, int N) {
  N = std::max(default_grid(a, N), default_grid(b, N));
  std::vector<double> fa, fb, d1, d2;
  radius_grids(a, N, fa, d1, d2);
  radius_grids(b, N, fb, d1, d2);
  double m = 0.0;
  for (int j = 0; j < N; ++j) m = std::max(m, std::abs(fa[j] - fb[j]));
  return m;
}

}  // namespace hsann
