#include "permanence/certificates.hpp"

#include "permanence/lp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace permanence {

namespace {

constexpr double kWeightUpperBound = 1e6;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string support_label(const std::vector<int>& support) {
  std::ostringstream os;
  os << "{";
  for (size_t a = 0; a < support.size(); ++a) os << (a ? "," : "") << support[a] + 1;
  os << "}";
  return os.str();
}

}  // namespace

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Permanent: return "Permanent";
    case Outcome::Impermanent: return "Impermanent";
    case Outcome::Degenerate: return "Degenerate";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

ConstraintSystem build_constraints(const SystemSpec& spec) {
  BoundarySet boundary = boundary_equilibria(spec);
  ConstraintSystem cs;
  cs.degenerate = boundary.degenerate;
  cs.notes = boundary.notes;
  cs.rows = Mat::Zero(static_cast<int>(boundary.equilibria.size()), spec.n);
  int r = 0;
  for (const Equilibrium& eq : boundary.equilibria) {
    Vec f = per_capita(spec, eq.x);
    cs.rows.row(r++) = f.transpose();
    cs.labels.push_back(eq.support);
  }
  return cs;
}

CertificateResult find_certificate(const ConstraintSystem& cs, Direction direction) {
  const int m = static_cast<int>(cs.rows.rows());
  const int n = static_cast<int>(cs.rows.cols());
  if (m < 1) throw std::invalid_argument("constraint system has no rows");

  const double sign = direction == Direction::Permanence ? 1.0 : -1.0;
  Mat rows = sign * cs.rows;

  // Variables: u_1..u_n (nu_i = 1 + u_i), t+ and t-. Maximize t = t+ - t-,
  // subject to t - rows.nu <= 0 and u_i <= U - 1.
  const int nv = n + 2;
  Mat A = Mat::Zero(m + n, nv);
  Vec b = Vec::Zero(m + n);
  for (int i = 0; i < m; ++i) {
    A.row(i).head(n) = -rows.row(i);
    A(i, n) = 1.0;
    A(i, n + 1) = -1.0;
    b[i] = rows.row(i).sum();
  }
  for (int j = 0; j < n; ++j) {
    A(m + j, j) = 1.0;
    b[m + j] = kWeightUpperBound - 1.0;
  }
  Vec obj = Vec::Zero(nv);
  obj[n] = 1.0;
  obj[n + 1] = -1.0;

  CertificateResult result;
  lp::Result sol = lp::solve_max(A, b, obj);
  if (sol.status != lp::Status::Optimal) {
    result.numerical_failure = true;
    return result;
  }
  result.lp_objective = sol.objective;

  Vec nu = Vec::Ones(n) + sol.x.head(n);
  // The constraint cone is scale-free, so the optimizer drifts to the box
  // bound; normalize to min nu_i = 1 so margins are comparable across specs.
  nu /= nu.minCoeff();
  result.hit_weight_bound = nu.maxCoeff() >= kWeightUpperBound * (1.0 - 1e-6);

  // Margin re-derived by direct evaluation, independent of the tableau.
  double margin = (rows * nu).minCoeff();
  double scale = 1.0 + cs.rows.cwiseAbs().maxCoeff();
  double t_min = 1e-8 * scale;
  if (margin > t_min) {
    result.cert = Certificate{nu, margin, direction};
  } else if (margin > 0.0 || sol.objective > 0.0) {
    result.degenerate_band = true;
  }
  return result;
}

double rho(const SystemSpec& spec) {
  Mat theta = characteristic_matrix(spec);
  return theta(0, 1) * theta(1, 2) * theta(2, 0) + theta(1, 0) * theta(0, 2) * theta(2, 1);
}

AttractorScan boundary_attractor(const SystemSpec& spec) {
  if (spec.n != 3) throw std::invalid_argument("boundary attractor scan requires n = 3");
  const double tol = classification_tol(spec);
  AttractorScan scan;

  for (const Equilibrium& q : axial_equilibria(spec)) {
    bool all_negative = true;
    for (const auto& [j, eig] : q.external_eigs) {
      if (std::abs(eig) <= tol) scan.tie_note = true;
      if (!(eig < -tol)) all_negative = false;
    }
    if (all_negative) {
      scan.attractor = q;
      return scan;
    }
  }

  for (int k = 0; k < 3; ++k) {
    int i = (k == 0) ? 1 : 0;
    int j = (k == 2) ? 1 : 2;
    SupportSolve s = equilibrium_on_support(spec, {i, j});
    if (s.status != SolveStatus::Found) continue;
    double bta = beta(spec, i, j);
    double fk = s.eq->external_eigs.at(k);
    if (std::abs(bta) <= tol || std::abs(fk) <= tol) scan.tie_note = true;
    if (bta > tol && fk < -tol) {
      scan.attractor = *s.eq;
      return scan;
    }
  }
  return scan;
}

Verdict analyze(const SystemSpec& spec) {
  Verdict v;

  if (spec.n == 1) {
    v.outcome = Outcome::Permanent;
    v.evidence.push_back("n=1: the axial equilibrium c/b attracts the whole open ray");
    return v;
  }

  if (spec.n >= 4) {
    v.outcome = Outcome::Inconclusive;
    v.notes =
        "n >= 4: boundary limit sets need not be equilibria; no analytic verdict is "
        "issued, use the simulation diagnostics";
    return v;
  }

  if (spec.n == 2) {
    const double tol = classification_tol(spec);
    double g12 = gamma(spec, 0, 1);
    double g21 = gamma(spec, 1, 0);
    if (std::abs(g12) <= tol || std::abs(g21) <= tol) {
      v.outcome = Outcome::Degenerate;
      v.evidence.push_back("n=2 rule: gamma sign tie, gamma_12 = " + fmt(g12) +
                           ", gamma_21 = " + fmt(g21));
      return v;
    }
    if (g12 > 0.0 && g21 > 0.0) {
      v.outcome = Outcome::Permanent;
      v.evidence.push_back("n=2 rule: gamma_12 = " + fmt(g12) + " > 0 and gamma_21 = " +
                           fmt(g21) + " > 0");
    } else {
      v.outcome = Outcome::Impermanent;
      int i = g12 < 0.0 ? 0 : 1;
      v.evidence.push_back("n=2 rule: gamma_" + std::string(i == 0 ? "12" : "21") +
                           " < 0, axial equilibrium q_" + std::to_string(i + 1) +
                           " attracts");
    }
    return v;
  }

  // n == 3 from here on.
  ConstraintSystem cs = build_constraints(spec);
  if (cs.degenerate) {
    v.outcome = Outcome::Degenerate;
    for (const auto& note : cs.notes) v.evidence.push_back("degenerate solve: " + note);
    return v;
  }

  SignConfiguration cfg = sign_configuration(spec);
  if (cfg.degenerate_solve || !cfg.nullcline_stable) {
    v.outcome = Outcome::Degenerate;
    v.evidence.push_back(cfg.degenerate_solve
                             ? "degenerate planar solve in the sign configuration"
                             : "nullcline sign tie: configuration is not nullcline stable");
    return v;
  }

  v.rho_value = rho(spec);
  bool class29 = is_class_29(spec);
  if (class29) v.evidence.push_back("class-29 configuration detected");

  CertificateResult perm = find_certificate(cs, Direction::Permanence);
  if (perm.numerical_failure) {
    v.evidence.push_back("LP numerical failure on the permanence direction");
  } else if (perm.cert) {
    v.outcome = Outcome::Permanent;
    v.certificate = perm.cert;
    v.evidence.push_back("permanence certificate over " + std::to_string(cs.rows.rows()) +
                         " boundary equilibria, margin " + fmt(perm.cert->margin));
    return v;
  } else if (perm.degenerate_band) {
    v.evidence.push_back("permanence LP margin positive but below the decision floor");
  }
  if (perm.hit_weight_bound) {
    v.notes = "a certificate may exist with weight ratios beyond the 1e6 box bound";
  }

  CertificateResult imperm = find_certificate(cs, Direction::Impermanence);
  if (imperm.numerical_failure) {
    v.evidence.push_back("LP numerical failure on the impermanence direction");
  } else if (imperm.cert) {
    v.outcome = Outcome::Impermanent;
    v.certificate = imperm.cert;
    v.evidence.push_back("impermanence certificate over " + std::to_string(cs.rows.rows()) +
                         " boundary equilibria, margin " + fmt(imperm.cert->margin));
    return v;
  } else if (imperm.degenerate_band) {
    v.evidence.push_back("impermanence LP margin positive but below the decision floor");
  }

  AttractorScan scan = boundary_attractor(spec);
  if (scan.attractor) {
    v.outcome = Outcome::Impermanent;
    v.evidence.push_back("boundary attractor at equilibrium with support " +
                         support_label(scan.attractor->support));
    return v;
  }
  if (scan.tie_note) v.evidence.push_back("eigenvalue sign tie in the attractor scan");

  CyclePattern cycle = cycle_pattern(spec);
  if (cycle.orientation != CycleOrientation::None) {
    Mat theta = characteristic_matrix(spec);
    double s = 1.0 + theta.cwiseAbs().maxCoeff();
    double rho_tol = 1e-10 * s * s * s;
    double r = *v.rho_value;
    v.evidence.push_back(std::string("heteroclinic cycle ") +
                         (cycle.orientation == CycleOrientation::Forward
                              ? "q1 -> q2 -> q3 -> q1"
                              : "q1 -> q3 -> q2 -> q1") +
                         ", rho = " + fmt(r));
    if (r > rho_tol) {
      v.outcome = Outcome::Permanent;
      return v;
    }
    if (r < -rho_tol) {
      v.outcome = Outcome::Impermanent;
      return v;
    }
    v.outcome = Outcome::Inconclusive;
    v.evidence.push_back("rho within the zero tolerance band");
    return v;
  }
  if (cycle.degenerate_note) v.evidence.push_back("cycle pattern blocked by a sign tie");

  v.outcome = Outcome::Inconclusive;
  return v;
}

}  // namespace permanence
