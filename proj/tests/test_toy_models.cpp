#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hsann/errors.hpp"
#include "hsann/toy_models.hpp"

using namespace hsann;

namespace {
constexpr double PI = 3.14159265358979323846;

std::vector<double> linear_profile(int M) {
  std::vector<double> u(M + 1);
  for (int i = 0; i <= M; ++i) u[i] = static_cast<double>(i) / M;
  return u;
}
}  // namespace

TEST_CASE("planar flow: conserved abscissa, exponentially contracted ordinate") {
  const auto end = planar_flow(3.0, 4.0, std::log(2.0));
  CHECK(end[0] == 3.0);  // exactly conserved
  CHECK(end[1] == doctest::Approx(2.0).epsilon(1e-15));

  // semigroup property
  const auto once = planar_flow(-1.0, 0.7, 0.4);
  const auto twice = planar_flow(once[0], once[1], 0.9);
  const auto direct = planar_flow(-1.0, 0.7, 1.3);
  CHECK(twice[0] == doctest::Approx(direct[0]).epsilon(1e-15));
  CHECK(twice[1] == doctest::Approx(direct[1]).epsilon(1e-14));
}

TEST_CASE("heat flow conserves the discrete mean to roundoff") {
  const int M = 64;
  const auto u0 = linear_profile(M);
  const double m0 = heat_mean(u0);
  for (bool implicit_scheme : {true, false}) {
    const double dt = implicit_scheme ? 1e-3 : 0.5 / (M * M) * 0.9;
    const HeatState end = heat_neumann(u0, 0.5, M, dt, implicit_scheme);
    CHECK(std::abs(heat_mean(end.u) - m0) <= 1e-13);
  }
}

TEST_CASE("heat flow relaxes to the constant equal to the initial mean") {
  const int M = 128;
  const auto u0 = linear_profile(M);
  const HeatState end = heat_neumann(u0, 3.0, M, 1e-3, true);
  for (double v : end.u) CHECK(std::abs(v - 0.5) <= 1e-8);
}

TEST_CASE("the flow is a contraction toward its center manifold of constants") {
  const HeatReport rep = heat_stable_manifold_check(linear_profile(64), 3.0, 1e-4);
  CHECK(rep.initial_mean == doctest::Approx(0.5).epsilon(1e-14));
  // Mean conservation is exact per step; 30000 steps accumulate tridiagonal
  // solve roundoff at ~n_steps * eps, so the drift bound is roundoff-class
  // rather than single-step-exact.
  CHECK(std::abs(rep.final_mean - rep.initial_mean) <= 1e-11);
  CHECK(rep.limit_sup_error <= 1e-8);
  CHECK(rep.zero_mean_final_norm <= 1e-8);
  // measured decay matches the discrete spectral gap of the scheme
  CHECK(std::abs(rep.decay_rate - rep.discrete_rate) <=
        0.02 * rep.discrete_rate);
  // which itself approximates the continuum gap pi^2
  CHECK(std::abs(rep.discrete_rate - PI * PI) <= 0.05 * PI * PI);
}

TEST_CASE("explicit stepping enforces its stability bound") {
  const int M = 32;
  const auto u0 = linear_profile(M);
  const double h = 1.0 / M;
  CHECK_THROWS_AS(heat_neumann(u0, 0.1, M, 2.0 * h * h, false), Error);
  try {
    heat_neumann(u0, 0.1, M, 2.0 * h * h, false);
  } catch (const Error& e) {
    CHECK(e.tag() == "unstable-dt");
  }
  // ... and the implicit scheme has no such restriction
  const HeatState end = heat_neumann(u0, 0.1, M, 2.0 * h * h, true);
  CHECK(std::isfinite(end.u[0]));
}

TEST_CASE("profile length must match the grid") {
  std::vector<double> u0(10, 1.0);
  CHECK_THROWS_AS(heat_neumann(u0, 0.1, 16, 1e-3, true), Error);
  try {
    heat_neumann(u0, 0.1, 16, 1e-3, true);
  } catch (const Error& e) {
    CHECK(e.tag() == "shape");
  }
}

TEST_CASE("a constant profile is a fixed point of both schemes") {
  const int M = 32;
  std::vector<double> u0(M + 1, 0.7);
  for (bool implicit_scheme : {true, false}) {
    const double dt = implicit_scheme ? 1e-2 : 1e-4;
    const HeatState end = heat_neumann(u0, 1.0, M, dt, implicit_scheme);
    for (double v : end.u) CHECK(v == doctest::Approx(0.7).epsilon(1e-14));
  }
}
