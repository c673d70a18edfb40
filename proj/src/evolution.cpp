// Time integration of the outer surface.  The flow is stiff (degree-k modes
// relax like exp(mu_k t) with mu_k ~ -k^3), so the diagonal linear part is
// integrated exactly and only the nonlinear remainder is stepped explicitly
// (first-order exponential time differencing).  Accuracy is controlled by
// step doubling with recursive halving; warm starts keep the per-step Newton
// cost at one or two field solves.

#include "hsann/evolution.hpp"

#include <cmath>

#include "hsann/errors.hpp"

namespace hsann {

namespace {

// (e^z - 1)/z with a series fallback near zero.
double phi1(double z) {
  if (std::abs(z) < 1e-6) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}

double sup_coeff(const SurfaceCoeffs& a) { return a.max_abs(); }

// Shared state for one integration: multiplier table, parameters, and the
// warm start carried between field evaluations.
struct Stepper {
  const MultiplierTable& table;
  const ProblemParams& p;
  InnerSolution warm;
  bool have_warm = false;

  SurfaceCoeffs field(const SurfaceCoeffs& rho, InnerSolution* inner = nullptr) {
    InnerSolution sol;
    const SurfaceCoeffs w =
        vector_field(rho, p, &sol, have_warm ? &warm : nullptr);
    warm = sol;
    have_warm = true;
    if (inner) *inner = sol;
    return w;
  }

  // Raw ETD1 update from a precomputed field value.
  SurfaceCoeffs raw_step(const SurfaceCoeffs& rho, const SurfaceCoeffs& f,
                         double dt) const {
    SurfaceCoeffs out(rho.k_max);
    for (int k = 0; k <= rho.k_max; ++k) {
      const double L = (k <= table.k_max) ? table.mu_k[k] / table.R : 0.0;
      const double z = L * dt;
      const double e = std::exp(z);
      const double w = dt * phi1(z);
      const int i0 = (k == 0) ? 0 : 2 * k - 1;
      const int i1 = (k == 0) ? 0 : 2 * k;
      for (int i = i0; i <= i1; ++i) {
        const double nonlinear = f.c[i] - L * rho.c[i];
        out.c[i] = e * rho.c[i] + w * nonlinear;
      }
    }
    return out;
  }

  // Controlled step: accept the two-half-step result when it agrees with the
  // full step, otherwise recurse on the halves.  f0 may carry a field value
  // already computed at rho.
  SurfaceCoeffs controlled(const SurfaceCoeffs& rho, double dt,
                           const SurfaceCoeffs* f0, int depth) {
    require(depth <= 20, "stiffness",
            "time step underflow: error estimate will not settle");
    const SurfaceCoeffs f = f0 ? *f0 : field(rho);
    const SurfaceCoeffs full = raw_step(rho, f, dt);
    const SurfaceCoeffs mid = raw_step(rho, f, 0.5 * dt);
    const SurfaceCoeffs fmid = field(mid);
    const SurfaceCoeffs two = raw_step(mid, fmid, 0.5 * dt);
    double err = 0.0;
    for (std::size_t i = 0; i < two.c.size(); ++i)
      err = std::max(err, std::abs(two.c[i] - full.c[i]));
    if (err <= p.step_tol) return two;
    const SurfaceCoeffs a = controlled(rho, 0.5 * dt, &f, depth + 1);
    return controlled(a, 0.5 * dt, nullptr, depth + 1);
  }
};

}  // namespace

SurfaceCoeffs vector_field(const SurfaceCoeffs& rho, const ProblemParams& p,
                           InnerSolution* inner, const InnerSolution* warm_start) {
  InnerSolution sol = solve_inner(rho, p, warm_start);
  const RadialSurface S{p.R, rho, p.n};
  const int Na = 2 * p.n_theta;
  std::vector<double> f, f1, f2;
  radius_grids(S, Na, f, f1, f2);
  std::vector<double> rate = neumann_trace(sol.u, f, f1, Side::outer);
  for (int j = 0; j < Na; ++j) {
    const double w = std::sqrt(f[j] * f[j] + f1[j] * f1[j]);
    rate[j] = -rate[j] * w / (f[j] * p.R);  // V_n = -d_n u, then chart factor
  }
  if (inner) *inner = sol;
  return analyze(rate, rho.k_max);
}

SurfaceCoeffs etd_step(const SurfaceCoeffs& rho, double dt,
                       const MultiplierTable& table, const ProblemParams& p) {
  require(dt > 0.0, "invalid-params", "time step must be positive");
  Stepper st{table, p, {}, false};
  return st.controlled(rho, dt, nullptr, 0);
}

double default_time_step(const ProblemParams& p) {
  const double mu2 = std::abs(mu_closed_form(2, p)) / p.R;
  return 0.1 / mu2;
}

Trajectory simulate(const SurfaceCoeffs& rho0, double t_max,
                    const ProblemParams& p, const StepSink& emit, double dt) {
  p.validate();
  require(t_max >= 0.0, "invalid-params", "t_max must be nonnegative");
  if (dt <= 0.0) dt = default_time_step(p);
  const MultiplierTable table = multiplier_table(p, rho0.k_max);

  Trajectory traj;
  Stepper st{table, p, {}, false};
  SurfaceCoeffs rho = rho0;
  double t = 0.0;

  auto record = [&](const SurfaceCoeffs& state, const SurfaceCoeffs& f,
                    const InnerSolution& sol) {
    StepRecord rec;
    rec.t = t;
    const RadialSurface S{p.R, state, p.n};
    rec.volume = enclosed_volume(S);
    rec.centroid = surface_centroid(S, p.n_theta);
    rec.c = sol.c;
    rec.field_residual = sup_coeff(f);
    rec.energies = mode_energies(state);
    traj.times.push_back(t);
    traj.states.push_back(state);
    traj.diagnostics.push_back(rec);
    if (emit) emit(t, state, rec);
  };

  SurfaceCoeffs f(rho.k_max);
  InnerSolution sol;
  for (double v : synthesize(rho, std::max(p.n_theta, 4 * (rho.k_max + 1))))
    require(std::abs(v) < 1.0, "out-of-chart",
            "initial state outside the radial chart");

  try {
    f = st.field(rho, &sol);
  } catch (const Error& e) {
    traj.termination = std::string("error:") + e.tag();
    return traj;
  }
  record(rho, f, sol);

  while (t < t_max) {
    if (sup_coeff(f) < p.stat_tol) {
      traj.termination = "stationary";
      return traj;
    }
    const double step = std::min(dt, t_max - t);
    SurfaceCoeffs next(rho.k_max);
    try {
      next = st.controlled(rho, step, &f, 0);
      require(next.max_abs() < 0.5, "out-of-chart",
              "surface perturbation left the trusted chart region");
      rho = next;
      t += step;
      f = st.field(rho, &sol);
    } catch (const Error& e) {
      traj.termination = std::string("error:") + e.tag();
      return traj;
    }
    record(rho, f, sol);
  }
  traj.termination = (sup_coeff(f) < p.stat_tol) ? "stationary" : "t_max";
  return traj;
}

}  // namespace hsann
