#pragma once

#include "permanence/model.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace permanence {

struct IntegratorOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double t_max = 100.0;
  long max_steps = 10000000;
  double min_log_density = -30.0;  // ln x below this is flagged as near-extinction
};

struct TrajectoryFlags {
  long rejected_steps = 0;
  double min_component = std::numeric_limits<double>::infinity();  // over positive components
  bool near_extinction = false;
};

/// Accepted integration steps; components that start at exactly 0 are
/// exactly 0 at every output time.
struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  TrajectoryFlags flags;
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive embedded Runge-Kutta 4/5 (Dormand-Prince). Strictly positive
/// components are integrated in logarithmic coordinates u_i = ln x_i, so
/// positivity and face invariance are structural rather than enforced by
/// clipping. Throws IntegrationError on step underflow or step budget
/// exhaustion.
Trajectory integrate(const SystemSpec& spec, const Vec& x0, const IntegratorOptions& opts);

/// The sub-system on the coordinate face spanned by the support indices;
/// dynamics agree with the full system restricted to that face.
SystemSpec restrict_to_face(const SystemSpec& spec, const std::vector<int>& support);

namespace detail {

/// Core Dormand-Prince 5(4) stepper over a generic right-hand side.
/// on_accept(t, y) is called for the initial point and every accepted step.
void dopri5(const std::function<void(double, const Vec&, Vec&)>& rhs, Vec y, double t0,
            double t1, const IntegratorOptions& opts,
            const std::function<void(double, const Vec&)>& on_accept, long* rejected_steps);

}  // namespace detail

}  // namespace permanence
