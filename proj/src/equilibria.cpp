#include "permanence/equilibria.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace permanence {

namespace {

constexpr double kConditionCutoff = 1e12;
constexpr double kPositivityBand = 1e-9;

Equilibrium make_equilibrium(const SystemSpec& spec, const std::vector<int>& support,
                             const Vec& x_full) {
  Equilibrium eq;
  eq.support = support;
  eq.x = x_full;
  Vec f = per_capita(spec, x_full);
  for (int j = 0; j < spec.n; ++j) {
    if (!std::binary_search(support.begin(), support.end(), j)) {
      eq.external_eigs[j] = f[j];
    }
  }
  Mat J = jacobian(spec, x_full);
  int k = static_cast<int>(support.size());
  Mat Jk(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) Jk(a, b) = J(support[a], support[b]);
  eq.internal_spectrum = Eigen::EigenSolver<Mat>(Jk, false).eigenvalues();
  return eq;
}

}  // namespace

std::vector<Equilibrium> axial_equilibria(const SystemSpec& spec) {
  std::vector<Equilibrium> out;
  out.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    Vec x = Vec::Zero(spec.n);
    x[i] = spec.c[i] / spec.B(i, i);
    out.push_back(make_equilibrium(spec, {i}, x));
  }
  return out;
}

SupportSolve equilibrium_on_support(const SystemSpec& spec, const std::vector<int>& support) {
  if (support.empty()) throw std::invalid_argument("support must be nonempty");
  std::vector<int> kappa = support;
  std::sort(kappa.begin(), kappa.end());
  for (int i : kappa) {
    if (i < 0 || i >= spec.n) throw std::invalid_argument("support index out of range");
  }

  int k = static_cast<int>(kappa.size());
  Mat Bk(k, k);
  Vec ck(k);
  for (int a = 0; a < k; ++a) {
    ck[a] = spec.c[kappa[a]];
    for (int b = 0; b < k; ++b) Bk(a, b) = spec.B(kappa[a], kappa[b]);
  }

  SupportSolve result;
  Eigen::JacobiSVD<Mat> svd(Bk, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(k - 1);
  if (smin <= 0.0 || smax / smin > kConditionCutoff) {
    result.status = SolveStatus::Degenerate;
    std::ostringstream os;
    os << "singular or ill-conditioned sub-block on support {";
    for (int a = 0; a < k; ++a) os << (a ? "," : "") << kappa[a] + 1;
    os << "}";
    result.note = os.str();
    return result;
  }

  Vec xk = Bk.partialPivLu().solve(ck);
  double scale = 1.0 + xk.cwiseAbs().maxCoeff();
  for (int a = 0; a < k; ++a) {
    if (std::abs(xk[a]) <= kPositivityBand * scale) {
      result.status = SolveStatus::Degenerate;
      std::ostringstream os;
      os << "component " << kappa[a] + 1 << " lies in the zero tolerance band";
      result.note = os.str();
      return result;
    }
  }
  for (int a = 0; a < k; ++a) {
    if (xk[a] < 0.0) {
      result.status = SolveStatus::NoPositiveSolution;
      return result;
    }
  }

  Vec x_full = Vec::Zero(spec.n);
  for (int a = 0; a < k; ++a) x_full[kappa[a]] = xk[a];
  result.status = SolveStatus::Found;
  result.eq = make_equilibrium(spec, kappa, x_full);
  return result;
}

BoundarySet boundary_equilibria(const SystemSpec& spec) {
  BoundarySet out;
  for (unsigned mask = 1; mask + 1 < (1u << spec.n); ++mask) {
    std::vector<int> support;
    for (int i = 0; i < spec.n; ++i) {
      if (mask & (1u << i)) support.push_back(i);
    }
    SupportSolve s = equilibrium_on_support(spec, support);
    if (s.status == SolveStatus::Degenerate) {
      out.degenerate = true;
      out.notes.push_back(s.note);
    } else if (s.status == SolveStatus::Found) {
      out.equilibria.push_back(std::move(*s.eq));
    }
  }
  std::sort(out.equilibria.begin(), out.equilibria.end(),
            [](const Equilibrium& a, const Equilibrium& b) {
              if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
              return a.support < b.support;
            });
  return out;
}

Mat characteristic_matrix(const SystemSpec& spec) {
  if (spec.n != 3) throw std::invalid_argument("characteristic matrix requires n = 3");
  Mat theta = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    double qi = spec.c[i] / spec.B(i, i);
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      theta(i, j) = growth_rate(spec.family, spec.c[j], spec.B(j, i) * qi);
    }
  }
  return theta;
}

}  // namespace permanence
