#include "permanence/nullcline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace permanence {

Sign sign_of(double v, double tol) {
  if (v > tol) return Sign::Positive;
  if (v < -tol) return Sign::Negative;
  return Sign::Zero;
}

char sign_char(Sign s) {
  switch (s) {
    case Sign::Negative: return '-';
    case Sign::Zero: return '0';
    case Sign::Positive: return '+';
  }
  return '?';
}

double classification_tol(const SystemSpec& spec) {
  double bn = spec.B.cwiseAbs().rowwise().sum().maxCoeff();
  double cn = spec.c.cwiseAbs().maxCoeff();
  return 1e-10 * (1.0 + bn * cn);
}

double gamma(const SystemSpec& spec, int i, int j) {
  if (i == j) throw std::invalid_argument("gamma requires i != j");
  return spec.B(i, i) * spec.c[j] - spec.B(j, i) * spec.c[i];
}

double beta(const SystemSpec& spec, int i, int j) {
  if (i >= j) throw std::invalid_argument("beta requires i < j");
  return spec.B(i, i) * spec.B(j, j) - spec.B(i, j) * spec.B(j, i);
}

int pair_index(int i, int j) {
  if (i == 0 && j == 1) return 0;
  if (i == 0 && j == 2) return 1;
  if (i == 1 && j == 2) return 2;
  throw std::invalid_argument("pair_index requires 0 <= i < j <= 2");
}

SignConfiguration sign_configuration(const SystemSpec& spec) {
  if (spec.n != 3) throw std::invalid_argument("sign configuration requires n = 3");
  const double tol = classification_tol(spec);

  SignConfiguration cfg;
  cfg.gamma_values = Mat::Zero(3, 3);
  bool any_zero = false;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      double g = gamma(spec, i, j);
      cfg.gamma_values(i, j) = g;
      cfg.gamma_signs[i][j] = sign_of(g, tol);
      any_zero |= cfg.gamma_signs[i][j] == Sign::Zero;
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      cfg.beta_signs[pair_index(i, j)] = sign_of(beta(spec, i, j), tol);
    }
  }

  // Planar quantity for each k whose planar equilibrium exists.
  for (int k = 0; k < 3; ++k) {
    int i = (k == 0) ? 1 : 0;
    int j = (k == 2) ? 1 : 2;
    SupportSolve s = equilibrium_on_support(spec, {i, j});
    if (s.status == SolveStatus::Degenerate) {
      cfg.degenerate_solve = true;
      continue;
    }
    if (s.status != SolveStatus::Found) continue;
    double q = spec.c[k] * beta(spec, i, j) - spec.B(k, i) * gamma(spec, j, i) -
               spec.B(k, j) * gamma(spec, i, j);
    cfg.planar_quantities[k] = q;
    any_zero |= sign_of(q, tol) == Sign::Zero;
  }

  cfg.nullcline_stable = !any_zero && !cfg.degenerate_solve;
  return cfg;
}

namespace {

SystemSpec permuted(const SystemSpec& spec, const std::array<int, 3>& p) {
  SystemSpec out = spec;
  for (int a = 0; a < 3; ++a) {
    out.c[a] = spec.c[p[a]];
    for (int b = 0; b < 3; ++b) out.B(a, b) = spec.B(p[a], p[b]);
  }
  return out;
}

// The seven strict inequalities for the representative labeling of class 29
// (0-based indices).
bool class_29_representative(const SystemSpec& spec, double tol) {
  if (!(gamma(spec, 0, 1) > tol)) return false;
  if (!(gamma(spec, 0, 2) > tol)) return false;
  if (!(gamma(spec, 1, 0) > tol)) return false;
  if (!(gamma(spec, 1, 2) < -tol)) return false;
  if (!(gamma(spec, 2, 0) < -tol)) return false;
  if (!(gamma(spec, 2, 1) > tol)) return false;
  double q = spec.B(2, 0) * gamma(spec, 1, 0) + spec.B(2, 1) * gamma(spec, 0, 1) -
             spec.c[2] * beta(spec, 0, 1);
  return q < -tol;
}

}  // namespace

bool is_class_29(const SystemSpec& spec) {
  if (spec.n != 3) throw std::invalid_argument("class-29 test requires n = 3");
  SignConfiguration cfg = sign_configuration(spec);
  if (!cfg.nullcline_stable) return false;
  const double tol = classification_tol(spec);
  static const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& p : perms) {
    if (class_29_representative(permuted(spec, p), tol)) return true;
  }
  return false;
}

CyclePattern cycle_pattern(const SystemSpec& spec) {
  if (spec.n != 3) throw std::invalid_argument("cycle pattern requires n = 3");
  CyclePattern pat;

  Mat theta = characteristic_matrix(spec);
  double tol = 1e-10 * (1.0 + theta.cwiseAbs().maxCoeff());
  bool tie = false;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && std::abs(theta(i, j)) <= tol) tie = true;
    }
  }
  if (tie) {
    pat.degenerate_note = true;
    return pat;
  }

  BoundarySet boundary = boundary_equilibria(spec);
  if (boundary.degenerate) {
    pat.degenerate_note = true;
    return pat;
  }
  // A May-Leonard cycle leaves only the three axial equilibria on the boundary.
  bool axial_only = boundary.equilibria.size() == 3;
  if (!axial_only) return pat;

  bool forward = theta(0, 1) > tol && theta(1, 2) > tol && theta(2, 0) > tol &&
                 theta(1, 0) < -tol && theta(0, 2) < -tol && theta(2, 1) < -tol;
  bool backward = theta(0, 1) < -tol && theta(1, 2) < -tol && theta(2, 0) < -tol &&
                  theta(1, 0) > tol && theta(0, 2) > tol && theta(2, 1) > tol;
  if (forward) {
    pat.orientation = CycleOrientation::Forward;
    pat.strict = true;
  } else if (backward) {
    pat.orientation = CycleOrientation::Backward;
    pat.strict = true;
  }
  return pat;
}

}  // namespace permanence
