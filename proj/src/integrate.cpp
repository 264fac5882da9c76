#include "permanence/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace permanence {

namespace detail {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat, the embedded error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

void dopri5(const std::function<void(double, const Vec&, Vec&)>& rhs, Vec y, double t0,
            double t1, const IntegratorOptions& opts,
            const std::function<void(double, const Vec&)>& on_accept, long* rejected_steps) {
  const int n = static_cast<int>(y.size());
  double t = t0;
  on_accept(t, y);
  if (n == 0 || t1 <= t0) return;

  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  rhs(t, y, k1);

  // Crude but robust initial step guess.
  double sc0 = opts.abs_tol + opts.rel_tol * std::max(1.0, y.cwiseAbs().maxCoeff());
  double d1 = k1.cwiseAbs().maxCoeff();
  double h = std::min(t1 - t0, d1 > 0.0 ? 0.01 * sc0 / (opts.rel_tol * d1 + 1e-16) : 1e-2);
  h = std::clamp(h, 1e-8 * (t1 - t0), t1 - t0);

  long steps = 0;
  while (t < t1) {
    if (++steps > opts.max_steps) throw IntegrationError("max_steps exceeded");
    if (h < 1e-14 * std::max(1.0, std::abs(t))) throw IntegrationError("step size underflow");
    if (t + h > t1) h = t1 - t;

    ytmp = y + h * (a21 * k1);
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, ynew, k7);  // FSAL
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      double e = err[i] / sc;
      err_norm += e * e;
    }
    err_norm = std::sqrt(err_norm / n);

    if (err_norm <= 1.0) {
      t += h;
      y.swap(ynew);
      k1.swap(k7);
      on_accept(t, y);
    } else if (rejected_steps) {
      ++(*rejected_steps);
    }
    double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 10.0;
    h *= std::clamp(factor, 0.2, 10.0);
  }
}

}  // namespace detail

Trajectory integrate(const SystemSpec& spec, const Vec& x0, const IntegratorOptions& opts) {
  if (x0.size() != spec.n) throw std::invalid_argument("initial state dimension mismatch");
  if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0) || !(opts.t_max > 0.0)) {
    throw std::invalid_argument("integrator tolerances and t_max must be positive");
  }
  std::vector<int> support;
  for (int i = 0; i < spec.n; ++i) {
    if (!(x0[i] >= 0.0)) throw std::invalid_argument("initial state must be nonnegative");
    if (x0[i] > 0.0) support.push_back(i);
  }

  Trajectory traj;
  const int k = static_cast<int>(support.size());

  if (k == 0) {
    // The origin is an equilibrium; report the two endpoints.
    traj.times = {0.0, opts.t_max};
    traj.states = {x0, x0};
    traj.flags.min_component = 0.0;
    return traj;
  }

  Vec u0(k);
  for (int a = 0; a < k; ++a) u0[a] = std::log(x0[support[a]]);

  Vec x_work = Vec::Zero(spec.n);
  auto rhs = [&](double, const Vec& u, Vec& du) {
    for (int a = 0; a < k; ++a) x_work[support[a]] = std::exp(u[a]);
    Vec load = spec.B * x_work;
    for (int a = 0; a < k; ++a) {
      du[a] = growth_rate(spec.family, spec.c[support[a]], load[support[a]]);
    }
  };

  auto on_accept = [&](double t, const Vec& u) {
    Vec x = Vec::Zero(spec.n);
    for (int a = 0; a < k; ++a) {
      x[support[a]] = std::exp(u[a]);
      traj.flags.min_component = std::min(traj.flags.min_component, x[support[a]]);
      if (u[a] < opts.min_log_density) traj.flags.near_extinction = true;
    }
    traj.times.push_back(t);
    traj.states.push_back(std::move(x));
  };

  detail::dopri5(rhs, u0, 0.0, opts.t_max, opts, on_accept, &traj.flags.rejected_steps);
  return traj;
}

SystemSpec restrict_to_face(const SystemSpec& spec, const std::vector<int>& support) {
  if (support.empty()) throw std::invalid_argument("support must be nonempty");
  std::vector<int> kappa = support;
  std::sort(kappa.begin(), kappa.end());
  int k = static_cast<int>(kappa.size());
  SystemSpec out;
  out.n = k;
  out.B = Mat(k, k);
  out.c = Vec(k);
  out.family = spec.family;
  for (int a = 0; a < k; ++a) {
    if (kappa[a] < 0 || kappa[a] >= spec.n) throw std::invalid_argument("support index out of range");
    out.c[a] = spec.c[kappa[a]];
    for (int b = 0; b < k; ++b) out.B(a, b) = spec.B(kappa[a], kappa[b]);
  }
  return out;
}

}  // namespace permanence
