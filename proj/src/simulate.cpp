#include "permanence/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace permanence {

namespace {

const int kHaltonPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

double axial_scale(const SystemSpec& spec) {
  double s = 0.0;
  for (int i = 0; i < spec.n; ++i) s = std::max(s, spec.c[i] / spec.B(i, i));
  return s;
}

}  // namespace

double halton(unsigned long index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * (index % base);
    index /= base;
  }
  return r;
}

LiapunovIntegral average_liapunov_integral(const SystemSpec& spec, const Vec& nu,
                                           const Vec& x0, const IntegratorOptions& opts) {
  if (nu.size() != spec.n) throw std::invalid_argument("nu dimension mismatch");
  for (int i = 0; i < spec.n; ++i) {
    if (!(nu[i] > 0.0)) throw std::invalid_argument("nu must be strictly positive");
  }
  if (x0.size() != spec.n) throw std::invalid_argument("initial state dimension mismatch");

  std::vector<int> support;
  for (int i = 0; i < spec.n; ++i) {
    if (!(x0[i] >= 0.0)) throw std::invalid_argument("initial state must be nonnegative");
    if (x0[i] > 0.0) support.push_back(i);
  }
  const int k = static_cast<int>(support.size());

  LiapunovIntegral out;
  out.running_sup = -std::numeric_limits<double>::infinity();
  out.running_inf = std::numeric_limits<double>::infinity();

  if (k == 0) {
    double g0 = 0.0;
    for (int i = 0; i < spec.n; ++i) g0 += nu[i] * growth_rate(spec.family, spec.c[i], 0.0);
    out.times = {0.0, opts.t_max};
    out.integral = {0.0, g0 * opts.t_max};
    out.running_sup = std::max(out.integral[0], out.integral[1]);
    out.running_inf = std::min(out.integral[0], out.integral[1]);
    return out;
  }

  // Augmented state: log densities on the support, then the cumulative
  // integral of g.
  Vec y0(k + 1);
  for (int a = 0; a < k; ++a) y0[a] = std::log(x0[support[a]]);
  y0[k] = 0.0;

  Vec x_work = Vec::Zero(spec.n);
  auto rhs = [&](double, const Vec& y, Vec& dy) {
    for (int a = 0; a < k; ++a) x_work[support[a]] = std::exp(y[a]);
    Vec load = spec.B * x_work;
    double g = 0.0;
    for (int i = 0; i < spec.n; ++i) {
      double fi = growth_rate(spec.family, spec.c[i], load[i]);
      g += nu[i] * fi;
      for (int a = 0; a < k; ++a) {
        if (support[a] == i) dy[a] = fi;
      }
    }
    dy[k] = g;
  };

  auto on_accept = [&](double t, const Vec& y) {
    out.times.push_back(t);
    out.integral.push_back(y[k]);
    out.running_sup = std::max(out.running_sup, y[k]);
    out.running_inf = std::min(out.running_inf, y[k]);
  };

  detail::dopri5(rhs, y0, 0.0, opts.t_max, opts, on_accept, nullptr);
  return out;
}

PermanenceReport empirical_permanence(const SystemSpec& spec, int n_samples,
                                      const IntegratorOptions& opts, unsigned long seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  if (spec.n > static_cast<int>(std::size(kHaltonPrimes))) {
    throw std::invalid_argument("too many dimensions for the Halton start sampler");
  }

  const double lo = 0.01;
  const double hi = 2.0 * axial_scale(spec);
  const double t_cut = opts.t_max / 2.0;

  PermanenceReport report;
  report.delta_hat = std::numeric_limits<double>::infinity();
  report.D_hat = 0.0;

  for (int s = 0; s < n_samples; ++s) {
    Vec x0(spec.n);
    for (int i = 0; i < spec.n; ++i) {
      x0[i] = lo + (hi - lo) * halton(seed + 1 + s, kHaltonPrimes[i]);
    }
    double traj_min = std::numeric_limits<double>::infinity();
    double traj_max = 0.0;
    try {
      Trajectory traj = integrate(spec, x0, opts);
      for (size_t p = 0; p < traj.times.size(); ++p) {
        if (traj.times[p] < t_cut) continue;
        traj_min = std::min(traj_min, traj.states[p].minCoeff());
        traj_max = std::max(traj_max, traj.states[p].maxCoeff());
      }
    } catch (const IntegrationError&) {
      report.failed_samples.push_back(s);
      report.per_trajectory_min.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    report.per_trajectory_min.push_back(traj_min);
    report.delta_hat = std::min(report.delta_hat, traj_min);
    report.D_hat = std::max(report.D_hat, traj_max);
  }
  return report;
}

SimplexCloud sample_carrying_simplex(const SystemSpec& spec, int n_rays, double t_settle,
                                     const IntegratorOptions& opts, unsigned long seed) {
  if (n_rays < 1) throw std::invalid_argument("n_rays must be at least 1");
  if (!(t_settle > 0.0)) throw std::invalid_argument("t_settle must be positive");
  if (spec.n > static_cast<int>(std::size(kHaltonPrimes))) {
    throw std::invalid_argument("too many dimensions for the Halton direction sampler");
  }

  const double R = 2.0 * axial_scale(spec) + 1.0;
  const double eps = 1e-3;
  IntegratorOptions ray_opts = opts;
  ray_opts.t_max = t_settle;

  SimplexCloud cloud;
  for (int r = 0; r < n_rays; ++r) {
    Vec d(spec.n);
    for (int i = 0; i < spec.n; ++i) {
      d[i] = 0.05 + 0.95 * halton(seed + 1 + r, kHaltonPrimes[i]);
    }
    d /= d.sum();

    Trajectory outer = integrate(spec, Vec(R * d), ray_opts);
    Trajectory inner = integrate(spec, Vec(eps * d), ray_opts);
    const Vec& p_out = outer.states.back();
    const Vec& p_in = inner.states.back();
    cloud.points.push_back(0.5 * (p_out + p_in));
    cloud.settled.push_back((p_out - p_in).norm() <= 1e-4);
  }
  return cloud;
}

}  // namespace permanence
