#pragma once

#include <array>
#include <string>
#include <vector>

#include "hsann/evolution.hpp"
#include "hsann/harmonics.hpp"
#include "hsann/params.hpp"

namespace hsann {

/// One experiment description: problem parameters, integration window,
/// initial data (explicit modes, a checkpoint file, or a seeded random
/// high-mode perturbation), and where outputs go.
struct RunConfig {
  // Time stepping re-solves the implicit problem from a nearby warm start, so
  // the cheap frozen-preconditioner Newton is the right default here (the
  // one-off solver entry point keeps the dense finite-difference default).
  ProblemParams params = [] {
    ProblemParams p;
    p.newton_mode = NewtonMode::precond;
    return p;
  }();
  double dt = 0.0;     // <= 0: default macro step 0.1 R/|mu_2|
  double t_max = 0.0;  // <= 0: default 10 R/|mu_2|
  unsigned seed = 1;
  std::string output_dir = "out";
  std::string checkpoint_path;                  // initial data file, optional
  std::vector<std::array<double, 3>> modes;     // (k, l, amplitude) triples
  double random_amp = 0.0;  // > 0: seeded uniform k>=2 amplitudes

  /// Materialize the initial coefficients this config describes.
  SurfaceCoeffs initial_state() const;

  /// Effective integration window / step.
  double effective_dt() const;
  double effective_t_max() const;
};

/// Parse `key = value` configuration text (# comments, blank lines allowed).
/// Unknown keys and invariant violations raise parse errors naming the key
/// and line.
RunConfig parse_config(const std::string& text);

/// Initial-data snapshot persisted as text: a format tag, one params line,
/// and one line per mode in round-trip-exact decimal (17 significant
/// digits).  Reading a written checkpoint and writing it again reproduces
/// the text byte for byte.
struct Checkpoint {
  ProblemParams params;
  SurfaceCoeffs coeffs;
};

std::string format_checkpoint(const Checkpoint& cp);
Checkpoint parse_checkpoint(const std::string& text);
void write_checkpoint(const std::string& path, const Checkpoint& cp);
Checkpoint read_checkpoint(const std::string& path);

/// Write trajectory.csv (fixed column set: t, volume, centroid_x,
/// centroid_y, c_x, c_y, field_residual, E_k0, E_k1, E_high) and
/// coefficients.csv (one row per snapshot, all modes) into dir.
void write_trajectory(const Trajectory& traj, const std::string& dir);

/// Round-trip-exact decimal formatting used by every writer.
std::string format_double(double v);

/// Entry point behind main(): subcommands spectrum, inner, simulate,
/// invariance, limit, stable-manifold, toy.  Returns 0 on success, 1 on
/// usage errors, 2 on numerical failure (error tag printed).
int run_cli(int argc, const char* const* argv);

}  // namespace hsann
