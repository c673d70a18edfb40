// Closed-form linearization multipliers about the concentric stationary
// annulus, for every ambient dimension, plus the numerical cross-check that
// measures the same rates from the discretized flow.  Everything is written
// in the overflow-safe variable q = K/R < 1, so degrees up to 64 and radius
// ratios down to 0.1 stay well inside double range.

#include "hsann/spectrum.hpp"

#include <cmath>

#include "hsann/errors.hpp"
#include "hsann/evolution.hpp"

namespace hsann {

double sphere_area(int n) {
  require(n >= 2, "invalid-dimension", "ambient dimension must be >= 2");
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double mu_closed_form(int k, const ProblemParams& p) {
  require(k >= 0, "invalid-mode", "degree must be nonnegative");
  require(p.n >= 2, "invalid-dimension", "ambient dimension must be >= 2");
  require(p.gamma > 0.0 && p.mu_inner > 0.0 && p.mu_inner <= p.gamma && p.R > 0.0,
          "invalid-params", "need 0 < mu <= gamma, R > 0");
  if (k <= 1) return 0.0;
  const int n = p.n;
  const double q = p.mu_inner / p.gamma;
  const double qm = std::pow(q, 2 * k + n - 2);
  const double A = (mode_eigenvalue(k, n) - (n - 1)) / (n - 1);
  const double num = static_cast<double>(k) * (k + n - 2) * (1.0 - qm);
  const double den = k * qm + (k + n - 2);
  return -(p.gamma / (p.R * p.R)) * A * num / den;
}

MultiplierTable multiplier_table(const ProblemParams& p, int k_max) {
  require(k_max >= 2, "invalid-params", "k_max must be >= 2");
  require(p.n >= 2, "invalid-dimension", "ambient dimension must be >= 2");
  require(p.gamma > 0.0 && p.mu_inner > 0.0 && p.mu_inner < p.gamma && p.R > 0.0,
          "invalid-params", "need 0 < mu < gamma, R > 0");
  MultiplierTable t;
  t.n = p.n;
  t.gamma = p.gamma;
  t.mu = p.mu_inner;
  t.R = p.R;
  t.K = p.K_ref();
  t.sigma_n = sphere_area(p.n);
  t.k_max = k_max;
  const int sz = k_max + 1;
  t.lambda.resize(sz);
  t.d.resize(sz);
  t.mu_k.resize(sz);
  t.b1.resize(sz);
  t.drhoP.resize(sz);
  t.s12.resize(sz);
  t.s13.resize(sz);
  t.g1.resize(sz);

  const int n = p.n;
  const double q = t.K / t.R;
  const double cS = p.gamma / (t.R * t.R);  // outer pressure-gradient scale
  const double cG = t.mu / (t.K * t.K);     // inner pressure-gradient scale

  for (int k = 0; k <= k_max; ++k) {
    t.lambda[k] = mode_eigenvalue(k, n);
    t.d[k] = static_cast<double>(mode_multiplicity(k, n));
    t.mu_k[k] = mu_closed_form(k, p);

    if (k == 0) {
      t.g1[0] = 1.0;
      if (n == 2) {
        const double lg = std::log(t.R / t.K);
        t.b1[0] = cG / lg;
        t.s12[0] = -cS / lg;
        t.s13[0] = t.mu / (t.K * t.R * lg);
        t.drhoP[0] = -p.gamma / (t.R * t.K * lg);
      } else {
        const double qm = std::pow(q, n - 2);
        t.b1[0] = cG * (n - 2) / (1.0 - qm);
        t.s12[0] = -cS * (n - 2) * qm / (1.0 - qm);
        t.s13[0] = cG * (n - 2) * std::pow(q, n - 1) / (1.0 - qm);
        t.drhoP[0] = -cS * (n - 2) / (q * (1.0 - qm));
      }
      continue;
    }
    if (k == 1) {
      t.b1[1] = 0.0;
      t.s12[1] = 0.0;
      t.s13[1] = 0.0;
      t.drhoP[1] = 0.0;
      t.g1[1] = t.R / t.K;
      continue;
    }
    const double m = 2.0 * k + n - 2;
    const double qm = std::pow(q, m);
    const double A = (t.lambda[k] - (n - 1)) / (n - 1);
    const double kn = k + n - 2.0;
    t.b1[k] = -cG * A * (k * qm + kn) / (1.0 - qm);
    t.s12[k] = cS * A * (k + kn * qm) / (1.0 - qm);
    t.s13[k] = -cG * A * m * std::pow(q, k + n - 1) / (1.0 - qm);
    t.drhoP[k] = cS * A * m * std::pow(q, k - 1) / (1.0 - qm);
    t.g1[k] = m * std::pow(q, k) / (k * qm + kn);
  }
  return t;
}

double mu_assembled(int k, const MultiplierTable& t) {
  require(k >= 0 && k <= t.k_max, "invalid-mode", "degree outside table range");
  return -(t.s12[k] + t.s13[k] * t.g1[k]);
}

ModeCheck jacobian_mode_check(ModeIndex m, double eps, const ProblemParams& p) {
  require(eps > 0.0, "invalid-params", "perturbation size must be positive");
  require(m.k <= p.k_max, "invalid-mode", "mode outside truncation");
  SurfaceCoeffs rho(p.k_max);
  rho.at(m) = eps;
  const SurfaceCoeffs w = vector_field(rho, p);
  ModeCheck out;
  out.rate = w.at(m) / eps;
  double leak2 = 0.0;
  const std::size_t keep = SurfaceCoeffs::flat_index(m);
  for (std::size_t i = 0; i < w.c.size(); ++i)
    if (i != keep) leak2 += (w.c[i] / eps) * (w.c[i] / eps);
  out.leakage = std::sqrt(leak2);
  return out;
}

}  // namespace hsann
