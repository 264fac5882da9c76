#include "permanence/integrate.hpp"

#include "test_specs.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace permanence;
using namespace permanence::testing;

TEST_CASE("logistic solution at t = 10") {
  Mat b1(1, 1);
  b1 << 1;
  SystemSpec spec = make_spec(b1, Vec::Ones(1));
  Vec x0(1);
  x0 << 1e-4;
  IntegratorOptions opts;
  opts.t_max = 10.0;
  Trajectory traj = integrate(spec, x0, opts);
  REQUIRE_FALSE(traj.states.empty());
  CHECK(traj.times.back() == doctest::Approx(10.0));
  // x(t) = x0 e^t / (1 + x0 (e^t - 1))
  double expected = 1e-4 * std::exp(10.0) / (1.0 + 1e-4 * (std::exp(10.0) - 1.0));
  CHECK(std::abs(traj.states.back()[0] - expected) <= 1e-6);
}

TEST_CASE("an equilibrium start stays put") {
  SystemSpec spec = symmetric_half();
  Vec xeq = Vec::Constant(3, 0.5);
  IntegratorOptions opts;
  opts.t_max = 50.0;
  Trajectory traj = integrate(spec, xeq, opts);
  for (const Vec& x : traj.states) {
    CHECK((x - xeq).cwiseAbs().maxCoeff() <= 1e-7);
  }
}

TEST_CASE("components starting at zero stay exactly zero") {
  for (int k = 0; k < 4; ++k) {
    SystemSpec spec = may_leonard(0.8, 1.1, family_by_index(k));
    Vec x0(3);
    x0 << 0.3, 0.0, 0.7;
    IntegratorOptions opts;
    opts.t_max = 20.0;
    Trajectory traj = integrate(spec, x0, opts);
    for (const Vec& x : traj.states) {
      CHECK(x[1] == 0.0);
      CHECK(x[0] > 0.0);
      CHECK(x[2] > 0.0);
    }
  }
}

TEST_CASE("tightening tolerances converges the endpoint") {
  SystemSpec spec = may_leonard(0.8, 1.1);
  Vec x0(3);
  x0 << 0.2, 0.4, 0.9;
  IntegratorOptions coarse;
  coarse.rel_tol = 1e-6;
  coarse.abs_tol = 1e-8;
  coarse.t_max = 30.0;
  IntegratorOptions fine = coarse;
  fine.rel_tol = 1e-10;
  fine.abs_tol = 1e-12;
  Vec xc = integrate(spec, x0, coarse).states.back();
  Vec xf = integrate(spec, x0, fine).states.back();
  CHECK((xc - xf).norm() <= 10.0 * coarse.rel_tol * (1.0 + xf.norm()));
}

TEST_CASE("face restriction matches the full system on the face") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    SystemSpec spec = random_spec(rng, 3, 0.2, 2.0, family_by_index(trial));
    SystemSpec face = restrict_to_face(spec, {0, 2});
    REQUIRE(face.n == 2);

    Vec x0(3);
    x0 << 0.4, 0.0, 0.9;
    Vec y0(2);
    y0 << 0.4, 0.9;
    IntegratorOptions opts;
    opts.t_max = 15.0;
    Vec xfull = integrate(spec, x0, opts).states.back();
    Vec yface = integrate(face, y0, opts).states.back();
    CHECK(std::abs(xfull[0] - yface[0]) <= 1e-7);
    CHECK(std::abs(xfull[2] - yface[1]) <= 1e-7);
    CHECK(xfull[1] == 0.0);
  }
}

TEST_CASE("near-extinction flag trips for an impermanent system") {
  SystemSpec spec = may_leonard(0.8, 1.3);
  Vec x0(3);
  x0 << 0.5, 0.6, 0.4;
  IntegratorOptions opts;
  opts.t_max = 2000.0;
  Trajectory traj = integrate(spec, x0, opts);
  CHECK(traj.flags.near_extinction);
  CHECK(traj.flags.min_component < 1e-10);
}

TEST_CASE("step budget exhaustion raises IntegrationError") {
  SystemSpec spec = symmetric_half();
  Vec x0 = Vec::Constant(3, 0.3);
  IntegratorOptions opts;
  opts.t_max = 100.0;
  opts.max_steps = 3;
  CHECK_THROWS_AS(integrate(spec, x0, opts), IntegrationError);
}

TEST_CASE("the all-zero start is the constant origin trajectory") {
  SystemSpec spec = symmetric_half();
  Trajectory traj = integrate(spec, Vec::Zero(3), {});
  REQUIRE(traj.states.size() >= 2);
  for (const Vec& x : traj.states) CHECK(x.isZero(0.0));
}
