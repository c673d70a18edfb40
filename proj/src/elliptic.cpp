// Laplace solver on a perturbed planar annulus.  The solution is expanded in
// a scaled Laurent-Fourier basis (each element exactly harmonic) and the
// Dirichlet data are matched by least squares at collocation points on both
// boundary curves; an orthogonal factorization keeps the fit backward-stable
// and a condition estimate guards against over-resolved bases.  Also provides
// the exact concentric-annulus mode profiles for any ambient dimension.

#include "hsann/elliptic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "hsann/errors.hpp"

namespace hsann {

namespace {

void check_validity(const HarmonicSeries& s, double r) {
  require(r >= s.r_min && r <= s.r_max, "invalid-annulus",
          "evaluation point outside the series validity annulus");
}

// min/max of the trigonometric interpolant of a radius grid, estimated on an
// oversampled mesh (grid-point extrema understate the true range between
// nodes).
void fine_range(const std::vector<double>& f, double* lo, double* hi) {
  const int N = static_cast<int>(f.size());
  const int M = std::max(8 * N, 1024);
  const std::vector<double> vals = trig_interpolate(f, uniform_angles(M));
  *lo = *std::min_element(vals.begin(), vals.end());
  *hi = *std::max_element(vals.begin(), vals.end());
}

}  // namespace

void HarmonicSeries::evaluate(double r, double theta, double* u, double* u_r,
                              double* u_theta) const {
  check_validity(*this, r);
  double v = alpha0 + beta0 * std::log(r / r_out);
  double vr = beta0 / r;
  double vt = 0.0;
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0;       // cos/sin of k*theta via angle addition
  double G = 1.0, D = 1.0;         // (r/r_out)^k, (r_in/r)^k
  const double gr = r / r_out, dr = r_in / r;
  for (int k = 1; k <= K_u; ++k) {
    const double cn = ck * c1 - sk * s1;
    const double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    G *= gr;
    D *= dr;
    const double ac = gc[k - 1] * G + dc[k - 1] * D;
    const double as = gs[k - 1] * G + ds[k - 1] * D;
    v += ac * ck + as * sk;
    vr += (k / r) * ((gc[k - 1] * G - dc[k - 1] * D) * ck +
                     (gs[k - 1] * G - ds[k - 1] * D) * sk);
    vt += k * (-ac * sk + as * ck);
  }
  if (u) *u = v;
  if (u_r) *u_r = vr;
  if (u_theta) *u_theta = vt;
}

double HarmonicSeries::laplacian(double r, double theta) const {
  check_validity(*this, r);
  const double r2 = r * r;
  double lap = -beta0 / r2 + beta0 / r2;  // (1, ln r) pair contributes zero
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0;
  double G = 1.0, D = 1.0;
  const double gr = r / r_out, dr = r_in / r;
  for (int k = 1; k <= K_u; ++k) {
    const double cn = ck * c1 - sk * s1;
    const double sn = sk * c1 + ck * s1;
    ck = cn;
    sk = sn;
    G *= gr;
    D *= dr;
    const double kk = static_cast<double>(k);
    // u_rr + u_r/r + u_tt/r^2 assembled per radial factor.
    const double growing = (kk * (kk - 1.0) + kk - kk * kk) / r2;  // = 0
    const double decaying = (kk * (kk + 1.0) - kk - kk * kk) / r2; // = 0
    lap += (gc[k - 1] * G * growing + dc[k - 1] * D * decaying) * ck +
           (gs[k - 1] * G * growing + ds[k - 1] * D * decaying) * sk;
  }
  return lap;
}

double RadialModeProfile::value(double r) const {
  if (k == 0 && n == 2) return c_grow + c_decay * std::log(r);
  return c_grow * std::pow(r, k) + c_decay * std::pow(r, -(k + n - 2));
}

double RadialModeProfile::dvalue(double r) const {
  if (k == 0 && n == 2) return c_decay / r;
  return c_grow * k * std::pow(r, k - 1) -
         c_decay * (k + n - 2) * std::pow(r, -(k + n - 1));
}

HarmonicSeries solve_dirichlet(const std::vector<double>& f_S,
                               const std::vector<double>& f_Gamma,
                               const std::vector<double>& g_S,
                               const std::vector<double>& g_Gamma, int K_u,
                               double over_collocation) {
  const std::size_t N = f_S.size();
  require(N >= 4, "invalid-grid", "boundary grids too small");
  require(f_Gamma.size() == N && g_S.size() == N && g_Gamma.size() == N,
          "shape", "boundary grids must share one uniform mesh");
  require(K_u >= 1, "invalid-params", "truncation degree must be >= 1");
  require(over_collocation >= 1.0, "invalid-params",
          "over_collocation must be >= 1");
  for (std::size_t j = 0; j < N; ++j) {
    require(std::isfinite(f_S[j]) && std::isfinite(f_Gamma[j]) &&
                std::isfinite(g_S[j]) && std::isfinite(g_Gamma[j]),
            "invalid-grid", "boundary grids must be finite");
    require(f_Gamma[j] > 0.0, "geometry-breakdown",
            "inner radius grid is not positive");
  }

  HarmonicSeries s;
  s.K_u = K_u;
  s.gc.assign(K_u, 0.0);
  s.dc.assign(K_u, 0.0);
  s.gs.assign(K_u, 0.0);
  s.ds.assign(K_u, 0.0);

  double lo_S, hi_S, lo_G, hi_G;
  fine_range(f_S, &lo_S, &hi_S);
  fine_range(f_Gamma, &lo_G, &hi_G);
  require(lo_S > hi_G, "invalid-annulus",
          "boundary curves cross: outer surface must stay outside inner");
  s.r_out = hi_S;
  s.r_in = lo_G;
  s.r_min = lo_G * (1.0 - 1e-9);
  s.r_max = hi_S * (1.0 + 1e-9);

  const int M = static_cast<int>(std::ceil(over_collocation * (4 * K_u + 2)));
  const int cols = 4 * K_u + 2;
  const std::vector<double> ang = uniform_angles(M);
  const std::vector<double> rS = trig_interpolate(f_S, ang);
  const std::vector<double> rG = trig_interpolate(f_Gamma, ang);
  const std::vector<double> bS = trig_interpolate(g_S, ang);
  const std::vector<double> bG = trig_interpolate(g_Gamma, ang);

  Eigen::MatrixXd A(2 * M, cols);
  Eigen::VectorXd b(2 * M);
  for (int row = 0; row < 2 * M; ++row) {
    const bool outer = row < M;
    const int j = outer ? row : row - M;
    const double r = outer ? rS[j] : rG[j];
    const double th = ang[j];
    b(row) = outer ? bS[j] : bG[j];
    A(row, 0) = 1.0;
    A(row, 1) = std::log(r / s.r_out);
    const double c1 = std::cos(th), s1 = std::sin(th);
    double ck = 1.0, sk = 0.0;
    double G = 1.0, D = 1.0;
    const double gr = r / s.r_out, dr = s.r_in / r;
    for (int k = 1; k <= K_u; ++k) {
      const double cn = ck * c1 - sk * s1;
      const double sn = sk * c1 + ck * s1;
      ck = cn;
      sk = sn;
      G *= gr;
      D *= dr;
      A(row, 2 + 4 * (k - 1) + 0) = G * ck;
      A(row, 2 + 4 * (k - 1) + 1) = D * ck;
      A(row, 2 + 4 * (k - 1) + 2) = G * sk;
      A(row, 2 + 4 * (k - 1) + 3) = D * sk;
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  const auto diag = qr.matrixQR().diagonal();
  const double dmax = std::abs(diag(0));
  const double dmin = std::abs(diag(cols - 1));
  s.conditioning = (dmin > 0.0) ? dmax / dmin : std::numeric_limits<double>::infinity();
  require(s.conditioning <= 1e12, "conditioning",
          "collocation system ill-conditioned; reduce the truncation degree "
          "or the boundary perturbation");
  const Eigen::VectorXd x = qr.solve(b);
  s.residual_sup = (A * x - b).cwiseAbs().maxCoeff();

  s.alpha0 = x(0);
  s.beta0 = x(1);
  for (int k = 1; k <= K_u; ++k) {
    s.gc[k - 1] = x(2 + 4 * (k - 1) + 0);
    s.dc[k - 1] = x(2 + 4 * (k - 1) + 1);
    s.gs[k - 1] = x(2 + 4 * (k - 1) + 2);
    s.ds[k - 1] = x(2 + 4 * (k - 1) + 3);
  }
  return s;
}

std::vector<double> neumann_trace(const HarmonicSeries& s,
                                  const std::vector<double>& f,
                                  const std::vector<double>& f1, Side side) {
  const int N = static_cast<int>(f.size());
  require(f1.size() == f.size(), "shape", "radius/derivative grids differ");
  require(N >= 4, "invalid-grid", "trace grid too small");
  const std::vector<double> ang = uniform_angles(N);
  std::vector<double> out(N);
  // Unit normal pointing away from the origin on the curve r=f(theta):
  //   nu = (f e_r - f' e_theta) / sqrt(f^2 + f'^2);
  // the annulus-outward normal is nu on the outer boundary and -nu on the
  // inner boundary (there it points toward the enclosed hole).
  const double sign = (side == Side::outer) ? 1.0 : -1.0;
  for (int j = 0; j < N; ++j) {
    double u, ur, ut;
    s.evaluate(f[j], ang[j], &u, &ur, &ut);
    const double w = std::sqrt(f[j] * f[j] + f1[j] * f1[j]);
    out[j] = sign * (f[j] * ur - f1[j] * ut / f[j]) / w;
  }
  return out;
}

RadialModeProfile concentric_mode_solution(int k, int n, double value_inner,
                                           double value_outer, double K, double R) {
  require(k >= 0, "invalid-mode", "degree must be nonnegative");
  require(n >= 2, "invalid-dimension", "ambient dimension must be >= 2");
  require(K > 0.0 && K < R, "invalid-annulus", "need 0 < K < R");
  RadialModeProfile p;
  p.k = k;
  p.n = n;
  if (k == 0 && n == 2) {
    p.c_decay = (value_outer - value_inner) / std::log(R / K);
    p.c_grow = value_outer - p.c_decay * std::log(R);
    return p;
  }
  // Solve [G(K) D(K); G(R) D(R)] [c_grow; c_decay] = [inner; outer].
  const double GK = std::pow(K, k), DK = std::pow(K, -(k + n - 2));
  const double GR = std::pow(R, k), DR = std::pow(R, -(k + n - 2));
  const double det = GK * DR - DK * GR;
  require(det != 0.0, "conditioning", "degenerate concentric mode system");
  p.c_grow = (value_inner * DR - value_outer * DK) / det;
  p.c_decay = (GK * value_outer - GR * value_inner) / det;
  return p;
}

}  // namespace hsann
