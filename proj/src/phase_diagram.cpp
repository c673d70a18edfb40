// End-state structure of the flow: exponential decay-rate fitting, limit
// prediction from conserved quantities, equivariance checks for translation
// and dilation, and a shooting construction that places initial data on the
// stable fibre of a chosen limit sphere.

#include "hsann/phase_diagram.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <utility>

#include "hsann/errors.hpp"

namespace hsann {

namespace {

void check_run(const Trajectory& traj, const char* what) {
  if (traj.termination.rfind("error:", 0) == 0)
    fail(traj.termination.substr(6), std::string(what) + ": simulation failed");
}

double chart_rate_scale(const ProblemParams& p) {
  return std::abs(mu_closed_form(2, p)) / p.R;
}

}  // namespace

std::pair<double, double> fit_decay_rate(const Trajectory& traj) {
  const double floor_energy = 100.0 * DBL_EPSILON;
  std::vector<double> ts, ys;  // y = log amplitude = 0.5 log E
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double e = traj.diagnostics[i].energies.e_high;
    if (e > floor_energy) {
      ts.push_back(traj.times[i]);
      ys.push_back(0.5 * std::log(e));
    }
  }
  require(ts.size() >= 10, "insufficient-decay",
          "too few resolvable samples of the high-mode energy");

  // Walk back from the end while the amplitude stays within one decade of
  // the final resolvable value.
  const double y_end = ys.back();
  std::size_t first = ys.size();
  while (first > 0 && ys[first - 1] <= y_end + std::log(10.0)) --first;
  const std::size_t m = ys.size() - first;
  require(m >= 2, "insufficient-decay", "final decade contains too few samples");

  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  for (std::size_t i = first; i < ys.size(); ++i) {
    st += ts[i];
    sy += ys[i];
    stt += ts[i] * ts[i];
    sty += ts[i] * ys[i];
  }
  const double det = m * stt - st * st;
  require(det > 0.0, "insufficient-decay", "degenerate time window");
  const double slope = (m * sty - st * sy) / det;
  const double icept = (sy - slope * st) / m;
  double rss = 0.0;
  for (std::size_t i = first; i < ys.size(); ++i) {
    const double d = ys[i] - (icept + slope * ts[i]);
    rss += d * d;
  }
  return {-slope, std::sqrt(rss / m)};
}

SurfaceCoeffs interpolate_state(const Trajectory& traj, double t) {
  const std::size_t n = traj.times.size();
  require(n >= 1, "shape", "empty trajectory");
  if (n == 1) return traj.states[0];
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(t - traj.times[i]) <= 1e-12 * std::max(1.0, std::abs(t)))
      return traj.states[i];

  // Four-point window around t, clamped to the ends.
  std::size_t hi = std::lower_bound(traj.times.begin(), traj.times.end(), t) -
                   traj.times.begin();
  std::size_t lo = (hi >= 2) ? hi - 2 : 0;
  const std::size_t count = std::min<std::size_t>(4, n);
  if (lo + count > n) lo = n - count;

  SurfaceCoeffs out(traj.states[0].k_max);
  for (std::size_t a = lo; a < lo + count; ++a) {
    double w = 1.0;
    for (std::size_t b = lo; b < lo + count; ++b)
      if (b != a) w *= (t - traj.times[b]) / (traj.times[a] - traj.times[b]);
    for (std::size_t i = 0; i < out.c.size(); ++i)
      out.c[i] += w * traj.states[a].c[i];
  }
  return out;
}

LimitPrediction predict_limit(const SurfaceCoeffs& rho0, const ProblemParams& p,
                              Trajectory* out_traj, double t_max) {
  p.validate();
  if (t_max <= 0.0) t_max = 10.0 / chart_rate_scale(p);
  const Trajectory traj = simulate(rho0, t_max, p);
  check_run(traj, "limit prediction");

  LimitPrediction out;
  const RadialSurface S0{p.R, rho0, p.n};
  out.outer.radius = std::sqrt(enclosed_volume(S0) / M_PI);
  out.inner.radius = (p.mu_inner / p.gamma) * out.outer.radius;

  double nu = 0.0;
  try {
    const auto fit = fit_decay_rate(traj);
    nu = fit.first;
    out.fitted_rate = fit.first;
    out.fit_residual = fit.second;
  } catch (const Error&) {
    nu = 0.0;  // stationary or immediately-converged run: nothing to fit
  }

  // Limit center: fit centroid(t) = c_inf + c1 exp(-nu t) on the tail of the
  // series (the constant term is the prediction); fall back to the terminal
  // centroid when there is no usable decay.
  const std::size_t n = traj.times.size();
  const std::size_t tail = std::max<std::size_t>(4, n - n / 3);
  if (nu > 0.0 && n >= 6 && tail < n) {
    for (int comp = 0; comp < 2; ++comp) {
      double s1 = 0.0, sx = 0.0, sxx = 0.0, sy = 0.0, sxy = 0.0;
      for (std::size_t i = tail; i < n; ++i) {
        const double x = std::exp(-nu * (traj.times[i] - traj.times[tail]));
        const double y = traj.diagnostics[i].centroid[comp];
        s1 += 1.0;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
      }
      const double det = s1 * sxx - sx * sx;
      out.outer.center[comp] =
          (det > 1e-30) ? (sxx * sy - sx * sxy) / det
                        : traj.diagnostics[n - 1].centroid[comp];
    }
  } else {
    out.outer.center = traj.diagnostics[n - 1].centroid;
  }
  out.inner.center = out.outer.center;

  const RadialSurface ST{p.R, traj.states[n - 1], p.n};
  const SphereData fitted = fit_sphere(ST, p.n_theta);
  out.terminal_centroid = fitted.center;
  out.terminal_radius = fitted.radius;
  out.terminal_high_energy = traj.diagnostics[n - 1].energies.e_high;
  if (out_traj) *out_traj = traj;
  return out;
}

InvarianceReport invariance_suite(const SurfaceCoeffs& rho0, const Vec2& z,
                                  double lambda, double T,
                                  const ProblemParams& p) {
  p.validate();
  require(lambda >= 0.5 && lambda <= 2.0, "invalid-params",
          "dilation factor must lie in [0.5, 2]");
  InvarianceReport rep;
  rep.z = z;
  rep.lambda = lambda;

  const Trajectory base = simulate(rho0, T, p);
  check_run(base, "invariance base run");

  // Translated start, same parameters; states must match the translated base
  // at equal times.
  const RadialSurface S0{p.R, rho0, p.n};
  const RadialSurface S0t = translate_resample(S0, z, p.n_theta);
  const Trajectory tr = simulate(S0t.rho, T, p);
  check_run(tr, "invariance translated run");
  for (std::size_t j = 0; j < tr.times.size(); ++j) {
    const SurfaceCoeffs b = interpolate_state(base, tr.times[j]);
    const RadialSurface expect = translate_resample({p.R, b, p.n}, z, p.n_theta);
    rep.translation_error =
        std::max(rep.translation_error,
                 sup_radius_distance(expect, {p.R, tr.states[j], p.n}, p.n_theta));
  }

  // Dilated start: the same coefficients over the reference radius
  // lambda * R describe the lambda-dilated surface, and the stationary
  // family fixes the inner reference accordingly.  Its time axis runs
  // lambda^3 slower.
  ProblemParams pd = p;
  pd.R = lambda * p.R;
  const double l3 = lambda * lambda * lambda;
  const Trajectory dl = simulate(rho0, l3 * T, pd);
  check_run(dl, "invariance dilated run");
  for (std::size_t j = 0; j < dl.times.size(); ++j) {
    const SurfaceCoeffs b = interpolate_state(base, dl.times[j] / l3);
    rep.dilation_error =
        std::max(rep.dilation_error,
                 sup_radius_distance({pd.R, b, p.n}, {pd.R, dl.states[j], p.n},
                                     p.n_theta));
  }
  return rep;
}

SurfaceCoeffs stable_manifold_point(const SurfaceCoeffs& pert,
                                    const SphereData& target,
                                    const ProblemParams& p) {
  p.validate();
  const double cx = target.center[0], cy = target.center[1];
  const double cnorm = std::hypot(cx, cy);
  require(target.radius > 0.0 && cnorm < 0.5 * target.radius, "invalid-params",
          "target sphere too far from the origin for the radial chart");
  require(pert.at({1, 1}) == 0.0 && pert.at({1, 2}) == 0.0 && pert.c[0] == 0.0,
          "invalid-params",
          "perturbation must carry only degree >= 2 content");

  // With no high-mode content the answer is the target sphere itself,
  // written as a radial graph about the origin.
  if (pert.max_abs() == 0.0) {
    const int N = std::max(256, 4 * (pert.k_max + 1));
    const std::vector<double> ang = uniform_angles(N);
    std::vector<double> rel(N);
    for (int j = 0; j < N; ++j) {
      const double proj = cx * std::cos(ang[j]) + cy * std::sin(ang[j]);
      const double f =
          proj + std::sqrt(target.radius * target.radius - cnorm * cnorm +
                           proj * proj);
      rel[j] = f / p.R - 1.0;
    }
    return analyze(rel, pert.k_max);
  }

  // Shooting: Newton on (degree-1 cos, degree-1 sin, constant) with the
  // frozen diagonal Jacobian R*I (translating or scaling the initial surface
  // translates or scales the limit sphere one-to-one at leading order).
  SurfaceCoeffs rho = pert;
  rho.at({1, 1}) = cx / p.R;
  rho.at({1, 2}) = cy / p.R;
  rho.c[0] = target.radius / p.R - 1.0;
  const double tol = 0.5e-5;
  for (int iter = 0; iter < 20; ++iter) {
    const LimitPrediction lp = predict_limit(rho, p);
    const double rx = lp.outer.center[0] - cx;
    const double ry = lp.outer.center[1] - cy;
    const double rr = lp.outer.radius - target.radius;
    if (std::max({std::abs(rx), std::abs(ry), std::abs(rr)}) < tol) return rho;
    rho.at({1, 1}) -= rx / p.R;
    rho.at({1, 2}) -= ry / p.R;
    rho.c[0] -= rr / p.R;
  }
  fail("newton-failure", "shooting iteration did not reach the target sphere");
}

}  // namespace hsann
