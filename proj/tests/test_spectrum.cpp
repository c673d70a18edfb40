#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "hsann/errors.hpp"
#include "hsann/spectrum.hpp"

using namespace hsann;

namespace {
constexpr double PI = 3.14159265358979323846;

ProblemParams base_params() {
  ProblemParams p;  // n=2, gamma=1, mu=1/2, R=1
  return p;
}
}  // namespace

TEST_CASE("unit sphere areas in low dimensions") {
  CHECK(sphere_area(2) == doctest::Approx(2.0 * PI).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * PI).epsilon(1e-14));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * PI * PI).epsilon(1e-14));
}

TEST_CASE("worked multiplier values at n=2, gamma=1, mu=1/2, R=1") {
  const auto p = base_params();
  const MultiplierTable t = multiplier_table(p, 8);
  CHECK(t.K == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(t.mu_k[2] == doctest::Approx(-90.0 / 17.0).epsilon(1e-14));
  CHECK(mu_closed_form(2, p) == doctest::Approx(-90.0 / 17.0).epsilon(1e-14));
  CHECK(t.b1[2] == doctest::Approx(-13.6).epsilon(1e-14));
  CHECK(t.drhoP[2] == doctest::Approx(6.4).epsilon(1e-14));
  CHECK(t.s12[2] == doctest::Approx(6.8).epsilon(1e-14));
  CHECK(t.s13[2] == doctest::Approx(-3.2).epsilon(1e-14));
  CHECK(t.g1[2] == doctest::Approx(8.0 / 17.0).epsilon(1e-14));

  // k=0 log-limit values
  CHECK(t.b1[0] == doctest::Approx(2.8853900817779268).epsilon(1e-14));
  CHECK(t.s12[0] == doctest::Approx(-1.0 / std::log(2.0)).epsilon(1e-13));

  // neutral directions
  CHECK(t.mu_k[0] == 0.0);
  CHECK(t.mu_k[1] == 0.0);
  CHECK(t.b1[1] == 0.0);
  CHECK(t.g1[0] == doctest::Approx(1.0));
  CHECK(t.g1[1] == doctest::Approx(2.0));  // R/K: translations shift both surfaces
}

TEST_CASE("assembled and closed-form decay rates agree across the family") {
  for (int n : {2, 3, 4}) {
    for (double ratio : {0.1, 0.5, 0.9}) {
      ProblemParams p;
      p.n = n;
      p.gamma = 1.3;
      p.mu_inner = 1.3 * ratio;
      p.R = 0.8;
      const MultiplierTable t = multiplier_table(p, 64);
      for (int k = 2; k <= 64; ++k) {
        const double a = mu_assembled(k, t);
        const double c = t.mu_k[k];
        CHECK(std::abs(a - c) <= 1e-10 * std::abs(c));
        CHECK(c == doctest::Approx(mu_closed_form(k, p)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("decay rates are negative and strictly ordered for k >= 2") {
  for (int n : {2, 3}) {
    ProblemParams p;
    p.n = n;
    const MultiplierTable t = multiplier_table(p, 32);
    for (int k = 2; k <= 32; ++k) {
      CHECK(t.mu_k[k] < 0.0);
      if (k > 2) CHECK(t.mu_k[k] < t.mu_k[k - 1]);
    }
  }
}

TEST_CASE("shape response is consistent with the block symbols for k >= 2") {
  const MultiplierTable t = multiplier_table(base_params(), 16);
  for (int k = 2; k <= 16; ++k)
    CHECK(t.g1[k] == doctest::Approx(-t.drhoP[k] / t.b1[k]).epsilon(1e-12));
}

TEST_CASE("equal tensions collapse the gap: mu_k -> 0 as mu -> gamma") {
  ProblemParams p;
  p.mu_inner = 1.0;  // equal to gamma: concentric steady annulus degenerates
  CHECK(mu_closed_form(2, p) == doctest::Approx(0.0));
  p.mu_inner = 1.0 - 1e-8;
  CHECK(std::abs(mu_closed_form(2, p)) <= 1e-5);
}

TEST_CASE("multiplier table rejects an empty annulus") {
  ProblemParams p;
  p.mu_inner = 1.5;  // K would exceed R
  CHECK_THROWS_AS(multiplier_table(p, 8), Error);
}

TEST_CASE("discretized linearization reproduces the k=2 multiplier") {
  ProblemParams p = base_params();
  p.k_max = 8;
  p.n_theta = 64;
  p.newton_mode = NewtonMode::precond;
  const ModeCheck mc = jacobian_mode_check({2, 1}, 1e-5, p);
  CHECK(std::abs(mc.rate - (-90.0 / 17.0)) <= 0.01 * (90.0 / 17.0));
  CHECK(mc.leakage <= 1e-3 * (90.0 / 17.0));
}

TEST_CASE("discretized linearization: translations are neutral") {
  ProblemParams p = base_params();
  p.k_max = 8;
  p.n_theta = 64;
  p.newton_mode = NewtonMode::precond;
  const ModeCheck mc = jacobian_mode_check({1, 2}, 1e-5, p);
  CHECK(std::abs(mc.rate) <= 1e-3 * (90.0 / 17.0));
}
