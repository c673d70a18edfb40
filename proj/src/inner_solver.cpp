// The implicit inner-boundary problem: for a given outer shape the inner
// boundary, the drift vector and the pressure field are found together by
// Newton iteration on a square system (inner-shape modes + drift components
// against flux-mismatch modes + the centroid constraint).  The linearization
// at the concentric stationary state is an explicit Fourier multiplier, which
// doubles as a cheap frozen-Jacobian iteration.

#include "hsann/inner_solver.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hsann/errors.hpp"
#include "hsann/spectrum.hpp"

namespace hsann {

namespace {

int unknown_count(int k_max) { return 2 * k_max + 3; }

Eigen::VectorXd pack(const SurfaceCoeffs& eta, const Vec2& c) {
  Eigen::VectorXd x(unknown_count(eta.k_max));
  for (std::size_t i = 0; i < eta.c.size(); ++i) x(i) = eta.c[i];
  x(x.size() - 2) = c[0];
  x(x.size() - 1) = c[1];
  return x;
}

void unpack(const Eigen::VectorXd& x, SurfaceCoeffs* eta, Vec2* c) {
  for (std::size_t i = 0; i < eta->c.size(); ++i) eta->c[i] = x(i);
  (*c)[0] = x(x.size() - 2);
  (*c)[1] = x(x.size() - 1);
}

Eigen::VectorXd pack_residual(const ResidualP& r) {
  Eigen::VectorXd F(unknown_count(r.neumann_mismatch.k_max));
  for (std::size_t i = 0; i < r.neumann_mismatch.c.size(); ++i)
    F(i) = r.neumann_mismatch.c[i];
  F(F.size() - 2) = r.centroid_gap[0];
  F(F.size() - 1) = r.centroid_gap[1];
  return F;
}

}  // namespace

ResidualP residual(const SurfaceCoeffs& rho, const SurfaceCoeffs& eta,
                   const Vec2& c, const ProblemParams& p,
                   HarmonicSeries* u_out) {
  require(p.n == 2, "invalid-dimension", "field solves are implemented for n=2");
  require(eta.k_max == rho.k_max, "shape",
          "inner and outer coefficient vectors must share one truncation");
  const int k_max = rho.k_max;
  const int N = p.n_theta;
  require(N >= 4 * (k_max + 1), "aliasing-risk",
          "grid too small for truncation: need n_theta >= 4(k_max+1)");

  const RadialSurface S{p.R, rho, p.n};
  const RadialSurface G{p.K_ref(), eta, p.n};

  std::vector<double> fS, fS1, fS2, fG, fG1, fG2;
  radius_grids(S, N, fS, fS1, fS2);
  radius_grids(G, N, fG, fG1, fG2);
  std::vector<double> gS = curvature(fS, fS1, fS2);
  std::vector<double> gG = curvature(fG, fG1, fG2);
  for (double& v : gS) v *= p.gamma;
  for (double& v : gG) v *= p.mu_inner;

  const HarmonicSeries u =
      solve_dirichlet(fS, fG, gS, gG, p.series_degree(), p.over_collocation);

  // Flux mismatch on the inner boundary, sampled on a doubled grid so that
  // quadratically generated high harmonics alias less into the kept modes.
  const int Na = 2 * N;
  std::vector<double> f, f1, f2;
  radius_grids(G, Na, f, f1, f2);
  const std::vector<double> ang = uniform_angles(Na);
  // neumann_trace on the inner side follows the annulus-outward normal
  // (toward the origin); the mismatch is stated with nu away from the
  // origin, hence the sign flip.
  std::vector<double> mism = neumann_trace(u, f, f1, Side::inner);
  for (int j = 0; j < Na; ++j) {
    const double w = std::sqrt(f[j] * f[j] + f1[j] * f1[j]);
    const double nu_x = (f[j] * std::cos(ang[j]) + f1[j] * std::sin(ang[j])) / w;
    const double nu_y = (f[j] * std::sin(ang[j]) - f1[j] * std::cos(ang[j])) / w;
    mism[j] = -mism[j] - (c[0] * nu_x + c[1] * nu_y);
  }

  ResidualP out;
  out.neumann_mismatch = analyze(mism, k_max);
  const Vec2 cS = surface_centroid(S, N);
  const Vec2 cG = surface_centroid(G, N);
  out.centroid_gap = {cG[0] - cS[0], cG[1] - cS[1]};
  if (u_out) *u_out = u;
  return out;
}

void linearized_inverse_at_zero(const SurfaceCoeffs& upsilon, const Vec2& b,
                                const ProblemParams& p, SurfaceCoeffs* zeta,
                                Vec2* c) {
  const MultiplierTable t = multiplier_table(p, upsilon.k_max);
  *zeta = SurfaceCoeffs(upsilon.k_max);
  // Degree 1: the mismatch rows read -c (the drift term), the centroid rows
  // read K * zeta_1.
  (*c)[0] = -upsilon.at({1, 1});
  (*c)[1] = -upsilon.at({1, 2});
  zeta->at({1, 1}) = b[0] / t.K;
  zeta->at({1, 2}) = b[1] / t.K;
  zeta->c[0] = upsilon.c[0] / t.b1[0];
  for (int k = 2; k <= upsilon.k_max; ++k) {
    zeta->at({k, 1}) = upsilon.at({k, 1}) / t.b1[k];
    zeta->at({k, 2}) = upsilon.at({k, 2}) / t.b1[k];
  }
}

InnerSolution solve_inner(const SurfaceCoeffs& rho, const ProblemParams& p,
                          const InnerSolution* warm_start) {
  p.validate();
  const int k_max = rho.k_max;
  const int m = unknown_count(k_max);

  InnerSolution sol;
  sol.eta = SurfaceCoeffs(k_max);
  if (warm_start && warm_start->eta.k_max == k_max) {
    sol.eta = warm_start->eta;
    sol.c = warm_start->c;
  }

  Eigen::VectorXd x = pack(sol.eta, sol.c);
  auto eval = [&](const Eigen::VectorXd& xv, HarmonicSeries* u) {
    SurfaceCoeffs eta(k_max);
    Vec2 c;
    unpack(xv, &eta, &c);
    return pack_residual(residual(rho, eta, c, p, u));
  };

  Eigen::VectorXd F;
  try {
    F = eval(x, &sol.u);
  } catch (const Error& e) {
    fail("inner-solve-failed",
         std::string("residual undefined at the starting point: ") + e.what());
  }
  double Fnorm = F.cwiseAbs().maxCoeff();

  NewtonMode mode = p.newton_mode;
  int stalled = 0;
  for (int iter = 0; iter < p.newton_max_iters; ++iter) {
    if (Fnorm < p.newton_tol) {
      sol.residual_norm = Fnorm;
      sol.newton_iters = iter;
      unpack(x, &sol.eta, &sol.c);
      return sol;
    }

    Eigen::VectorXd dx(m);
    if (mode == NewtonMode::precond) {
      SurfaceCoeffs ups(k_max);
      Vec2 b;
      for (int i = 0; i < m - 2; ++i) ups.c[i] = F(i);
      b = {F(m - 2), F(m - 1)};
      SurfaceCoeffs zeta(k_max);
      Vec2 dc;
      linearized_inverse_at_zero(ups, b, p, &zeta, &dc);
      dx = -pack(zeta, dc);
    } else {
      Eigen::MatrixXd J(m, m);
      const double h = p.fd_step;
      for (int i = 0; i < m; ++i) {
        Eigen::VectorXd xp = x;
        xp(i) += h;
        J.col(i) = (eval(xp, nullptr) - F) / h;
      }
      dx = J.colPivHouseholderQr().solve(-F);
    }

    // Damped acceptance: halve the step until the residual drops (or give up
    // and treat the iteration as stalled).
    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd xn, Fn;
    HarmonicSeries un;
    for (int back = 0; back < 7; ++back) {
      xn = x + alpha * dx;
      try {
        Fn = eval(xn, &un);
      } catch (const Error&) {
        alpha *= 0.5;  // probe left the valid annulus; shorten the step
        continue;
      }
      const double fn = Fn.cwiseAbs().maxCoeff();
      if (fn < Fnorm * (1.0 - 0.25 * alpha) || fn < p.newton_tol) {
        x = xn;
        F = Fn;
        Fnorm = fn;
        sol.u = un;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }

    if (!accepted || alpha < 1.0) ++stalled;
    if (mode == NewtonMode::precond && (stalled >= 2 || !accepted)) {
      mode = NewtonMode::fd_jacobian;  // frozen inverse stopped helping
      stalled = 0;
      continue;
    }
    require(accepted, "inner-solve-failed",
            "damped Newton cannot reduce the residual");
  }
  if (Fnorm < p.newton_tol) {
    sol.residual_norm = Fnorm;
    sol.newton_iters = p.newton_max_iters;
    unpack(x, &sol.eta, &sol.c);
    return sol;
  }
  fail("inner-solve-failed", "iteration limit reached before convergence");
}

}  // namespace hsann
