// Two exactly-understood model systems used as oracles for the phase-diagram
// machinery: the planar flow (x'=0, y'=-y) with its trivial center manifold,
// and the Neumann heat equation on [0,1], discretized so that the trapezoid
// mean -- the discrete shadow of the conserved integral -- is preserved to
// the last bit.

#include "hsann/toy_models.hpp"

#include <cmath>

#include "hsann/errors.hpp"

namespace hsann {

std::array<double, 2> planar_flow(double x0, double y0, double t) {
  return {x0, y0 * std::exp(-t)};
}

double heat_mean(const std::vector<double>& u) {
  require(u.size() >= 2, "shape", "need at least two nodes");
  double s = 0.5 * (u.front() + u.back());
  for (std::size_t i = 1; i + 1 < u.size(); ++i) s += u[i];
  return s / (u.size() - 1);
}

namespace {

// One implicit Euler step: solve (I - dt L) v = u with the mirrored-end
// tridiagonal Laplacian, by the Thomas algorithm.
void implicit_step(std::vector<double>& u, double r) {
  const std::size_t n = u.size();
  std::vector<double> c(n), d(n);
  // Row 0: (1+2r) v0 - 2r v1 = u0.
  c[0] = -2.0 * r / (1.0 + 2.0 * r);
  d[0] = u[0] / (1.0 + 2.0 * r);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double m = (1.0 + 2.0 * r) + r * c[i - 1];
    c[i] = -r / m;
    d[i] = (u[i] + r * d[i - 1]) / m;
  }
  // Row M: -2r v_{M-1} + (1+2r) v_M = u_M.
  const double m = (1.0 + 2.0 * r) + 2.0 * r * c[n - 2];
  d[n - 1] = (u[n - 1] + 2.0 * r * d[n - 2]) / m;
  u[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) u[i] = d[i] - c[i] * u[i + 1];
}

void explicit_step(std::vector<double>& u, double r) {
  const std::size_t n = u.size();
  std::vector<double> v(n);
  v[0] = u[0] + r * (2.0 * u[1] - 2.0 * u[0]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    v[i] = u[i] + r * (u[i - 1] - 2.0 * u[i] + u[i + 1]);
  v[n - 1] = u[n - 1] + r * (2.0 * u[n - 2] - 2.0 * u[n - 1]);
  u.swap(v);
}

}  // namespace

HeatState heat_neumann(const std::vector<double>& u0, double T, int M,
                       double dt, bool implicit_scheme) {
  require(M >= 2, "invalid-params", "need at least two intervals");
  require(u0.size() == static_cast<std::size_t>(M) + 1, "shape",
          "grid must have M+1 nodes");
  require(T >= 0.0 && dt > 0.0, "invalid-params", "need T >= 0 and dt > 0");
  for (double v : u0)
    require(std::isfinite(v), "invalid-grid", "grid values must be finite");
  const double h = 1.0 / M;
  if (!implicit_scheme)
    require(dt <= 0.5 * h * h, "unstable-dt",
            "explicit scheme requires dt <= h^2/2");

  HeatState s{u0, 0.0};
  while (s.time < T) {
    const double step = std::min(dt, T - s.time);
    const double r = step / (h * h);
    if (implicit_scheme)
      implicit_step(s.u, r);
    else
      explicit_step(s.u, r);
    s.time += step;
  }
  return s;
}

namespace {

double mean_free_l2(const std::vector<double>& u) {
  const double a = heat_mean(u);
  const std::size_t n = u.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double v = u[i] - a;
    s += w * v * v;
  }
  return std::sqrt(s / (n - 1));
}

}  // namespace

HeatReport heat_stable_manifold_check(const std::vector<double>& u0, double T,
                                      double dt) {
  const int M = static_cast<int>(u0.size()) - 1;
  HeatReport rep;
  rep.initial_mean = heat_mean(u0);

  const HeatState end = heat_neumann(u0, T, M, dt);
  rep.final_mean = heat_mean(end.u);
  for (double v : end.u)
    rep.limit_sup_error =
        std::max(rep.limit_sup_error, std::abs(v - rep.initial_mean));
  rep.zero_mean_final_norm = mean_free_l2(end.u);

  // Decay rate of the mean-free part, measured after the fast modes have
  // died, against the slowest discrete Neumann mode of this exact scheme.
  const double t1 = std::min(0.1, 0.25 * T);
  const double t2 = 2.0 * t1;
  if (t2 > 0.0) {
    std::vector<double> v0 = u0;
    for (double& v : v0) v -= rep.initial_mean;
    const double n1 = mean_free_l2(heat_neumann(v0, t1, M, dt).u);
    const double n2 = mean_free_l2(heat_neumann(v0, t2, M, dt).u);
    if (n1 > 0.0 && n2 > 0.0) rep.decay_rate = std::log(n1 / n2) / (t2 - t1);
  }
  const double h = 1.0 / M;
  const double lam = 2.0 * (1.0 - std::cos(M_PI * h)) / (h * h);
  rep.discrete_rate = std::log1p(dt * lam) / dt;
  return rep;
}

}  // namespace hsann
