#include "permanence/simulate.hpp"

#include "test_specs.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace permanence;
using namespace permanence::testing;

TEST_CASE("halton radical inverse values") {
  CHECK(halton(1, 2) == doctest::Approx(0.5));
  CHECK(halton(2, 2) == doctest::Approx(0.25));
  CHECK(halton(3, 2) == doctest::Approx(0.75));
  CHECK(halton(1, 3) == doctest::Approx(1.0 / 3.0));
  CHECK(halton(5, 3) == doctest::Approx(7.0 / 9.0));  // 5 = 12_3, reversed 0.21_3
  for (unsigned long i = 1; i < 200; ++i) {
    double v = halton(i, 5);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("Liapunov integral slope at a boundary equilibrium") {
  // Starting exactly at q1 the orbit is stationary and the integral grows
  // linearly with slope g(q1) = nu_2 f_2(q1) + nu_3 f_3(q1) = 0.5 + 0.5.
  SystemSpec spec = symmetric_half();
  Vec q1 = Vec::Zero(3);
  q1[0] = 1.0;
  IntegratorOptions opts;
  opts.t_max = 20.0;
  LiapunovIntegral li = average_liapunov_integral(spec, Vec::Ones(3), q1, opts);
  REQUIRE_FALSE(li.integral.empty());
  CHECK(li.integral.back() == doctest::Approx(20.0).epsilon(1e-6));
}

TEST_CASE("Liapunov integral slope on a planar face") {
  // From (0.1, 0.1, 0) the face orbit converges to (2/3, 2/3, 0), where the
  // only nonzero rate is f_3 = 1/3; the long-run slope approaches 1/3.
  SystemSpec spec = symmetric_half();
  Vec x0(3);
  x0 << 0.1, 0.1, 0.0;
  IntegratorOptions opts;
  opts.t_max = 200.0;
  LiapunovIntegral li = average_liapunov_integral(spec, Vec::Ones(3), x0, opts);
  REQUIRE(li.times.back() == doctest::Approx(200.0));
  // Slope over the settled window [100, 200].
  size_t i100 = 0;
  while (li.times[i100] < 100.0) ++i100;
  double slope = (li.integral.back() - li.integral[i100]) / (li.times.back() - li.times[i100]);
  CHECK(slope == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("Liapunov integral is linear in the weights") {
  SystemSpec spec = may_leonard(0.8, 1.1);
  Vec x0(3);
  x0 << 0.3, 0.5, 0.2;
  IntegratorOptions opts;
  opts.t_max = 10.0;
  Vec nu1(3), nu2(3);
  nu1 << 1, 2, 3;
  nu2 << 2, 4, 6;
  LiapunovIntegral a = average_liapunov_integral(spec, nu1, x0, opts);
  LiapunovIntegral b = average_liapunov_integral(spec, nu2, x0, opts);
  CHECK(b.integral.back() == doctest::Approx(2.0 * a.integral.back()).epsilon(1e-5));
}

TEST_CASE("empirical permanence is deterministic in the seed") {
  SystemSpec spec = symmetric_half();
  IntegratorOptions opts;
  opts.t_max = 50.0;
  PermanenceReport a = empirical_permanence(spec, 5, opts, 42);
  PermanenceReport b = empirical_permanence(spec, 5, opts, 42);
  REQUIRE(a.per_trajectory_min.size() == 5);
  for (int s = 0; s < 5; ++s) {
    CHECK(a.per_trajectory_min[s] == b.per_trajectory_min[s]);
  }
  CHECK(a.delta_hat == b.delta_hat);
  CHECK(a.D_hat == b.D_hat);
}

TEST_CASE("empirical permanence separates the two May-Leonard regimes") {
  IntegratorOptions opts;
  opts.t_max = 500.0;
  PermanenceReport perm = empirical_permanence(may_leonard(0.8, 1.1), 4, opts);
  CHECK(perm.failed_samples.empty());
  CHECK(perm.delta_hat > 1e-4);
  CHECK(perm.D_hat < 10.0);

  PermanenceReport imp = empirical_permanence(may_leonard(0.8, 1.3), 4, opts);
  double worst = 1e300;
  for (double m : imp.per_trajectory_min) worst = std::min(worst, m);
  CHECK(worst < 1e-4);
}

TEST_CASE("carrying simplex cloud is positive and unordered") {
  // Moderate settle time: the rays have reached the invariant surface but
  // have not yet collapsed onto the interior attractor.
  SystemSpec spec = symmetric_half();
  SimplexCloud cloud = sample_carrying_simplex(spec, 12, 10.0);
  REQUIRE(cloud.points.size() == 12);
  double spread = 0.0;
  for (const Vec& p : cloud.points) {
    CHECK(p.minCoeff() > 0.0);
    spread = std::max(spread, (p - cloud.points[0]).norm());
  }
  CHECK(spread > 0.05);  // genuinely a surface sample, not one clustered point
  // No point strictly dominates another (the surface is unordered).
  for (size_t a = 0; a < cloud.points.size(); ++a) {
    for (size_t b = 0; b < cloud.points.size(); ++b) {
      if (a == b) continue;
      bool dominates = true;
      for (int i = 0; i < 3; ++i) {
        if (cloud.points[a][i] <= cloud.points[b][i] + 1e-6) dominates = false;
      }
      CHECK_FALSE(dominates);
    }
  }
}

TEST_CASE("rays settle onto the interior attractor at long horizons") {
  SystemSpec spec = symmetric_half();
  SimplexCloud cloud = sample_carrying_simplex(spec, 6, 120.0);
  int settled = 0;
  for (bool s : cloud.settled) settled += s;
  CHECK(settled == 6);
  for (const Vec& p : cloud.points) {
    CHECK((p - Vec::Constant(3, 0.5)).norm() <= 1e-3);
  }
}

TEST_CASE("scaling the system rescales the simplex cloud") {
  // For the linear per-capita family, scaling c and B rows leaves the
  // nullclines -- and hence the settled cloud -- unchanged.
  SystemSpec base = symmetric_half();
  SystemSpec scaled = base;
  scaled.B *= 3.0;
  scaled.c *= 3.0;
  SimplexCloud a = sample_carrying_simplex(base, 6, 80.0);
  SimplexCloud b = sample_carrying_simplex(scaled, 6, 80.0);
  for (size_t k = 0; k < a.points.size(); ++k) {
    CHECK((a.points[k] - b.points[k]).cwiseAbs().maxCoeff() <= 1e-3);
  }
}
