#pragma once

#include "permanence/integrate.hpp"
#include "permanence/model.hpp"

#include <vector>

namespace permanence {

/// Radical-inverse Halton value for the given index and prime base.
double halton(unsigned long index, int base);

struct LiapunovIntegral {
  std::vector<double> times;
  std::vector<double> integral;  // cumulative integral of g along the orbit
  double running_sup = 0.0;
  double running_inf = 0.0;
};

/// Integrates the orbit from x0 together with the cumulative average-
/// Liapunov integral t -> int_0^t sum_i nu_i f_i(x(s)) ds as an augmented
/// state variable.
LiapunovIntegral average_liapunov_integral(const SystemSpec& spec, const Vec& nu,
                                           const Vec& x0, const IntegratorOptions& opts);

struct PermanenceReport {
  double delta_hat = 0.0;  // min over trajectories of the retained-time minimum density
  double D_hat = 0.0;      // max over trajectories of the retained-time maximum density
  std::vector<double> per_trajectory_min;
  std::vector<int> failed_samples;
};

/// Integrates from quasi-random interior starts in [0.01, 2 max_i c_i/b_ii]^n
/// and discards the first half of the horizon as transient. Per-sample
/// integrator failures are recorded, not fatal.
PermanenceReport empirical_permanence(const SystemSpec& spec, int n_samples,
                                      const IntegratorOptions& opts, unsigned long seed = 42);

struct SimplexCloud {
  std::vector<Vec> points;
  std::vector<bool> settled;  // inner and outer settle within 1e-4 of each other
};

/// Approximates the carrying simplex by settling rays through quasi-random
/// directions on the unit simplex from outside (R d) and from near the
/// origin (eps d).
SimplexCloud sample_carrying_simplex(const SystemSpec& spec, int n_rays, double t_settle,
                                     const IntegratorOptions& opts = {},
                                     unsigned long seed = 42);

}  // namespace permanence
