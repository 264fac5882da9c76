#pragma once

#include "permanence/equilibria.hpp"
#include "permanence/model.hpp"
#include "permanence/nullcline.hpp"

#include <optional>
#include <string>
#include <vector>

namespace permanence {

/// One row per boundary equilibrium: the per-capita rates (f_1, ..., f_n)
/// evaluated there. Entries on the support are zero up to the solve residual.
struct ConstraintSystem {
  Mat rows;
  std::vector<std::vector<int>> labels;
  bool degenerate = false;
  std::vector<std::string> notes;
};

enum class Direction { Permanence, Impermanence };

/// An average-Liapunov weight vector nu >> 0 with the achieved margin:
/// every row satisfies sum_i nu_i f_i >= margin (Permanence) or
/// <= -margin (Impermanence).
struct Certificate {
  Vec nu;
  double margin = 0.0;
  Direction direction = Direction::Permanence;
};

struct CertificateResult {
  std::optional<Certificate> cert;
  bool degenerate_band = false;    // optimal margin positive but below the decision floor
  bool hit_weight_bound = false;   // some weight sits at the upper box bound
  bool numerical_failure = false;
  double lp_objective = 0.0;
};

ConstraintSystem build_constraints(const SystemSpec& spec);

/// Solves max t s.t. row . nu >= t (resp. <= -t) per row, 1 <= nu_i <= 1e6.
/// The box bound keeps the homogeneous cone problem bounded; a certificate
/// that would need weight ratios beyond 1e6 is reported as infeasible with
/// hit_weight_bound set.
CertificateResult find_certificate(const ConstraintSystem& cs, Direction direction);

/// rho = theta_12 theta_23 theta_31 + theta_21 theta_13 theta_32 from the
/// characteristic matrix; decisive only on a heteroclinic cycle pattern.
double rho(const SystemSpec& spec);

struct AttractorScan {
  std::optional<Equilibrium> attractor;
  bool tie_note = false;
};

/// An axial equilibrium with both external eigenvalues negative, or a
/// planar equilibrium attracting within its face with negative external
/// eigenvalue; strict signs only.
AttractorScan boundary_attractor(const SystemSpec& spec);

enum class Outcome { Permanent, Impermanent, Degenerate, Inconclusive };
std::string outcome_name(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<Certificate> certificate;
  std::optional<double> rho_value;
  std::vector<std::string> evidence;
  std::string notes;
};

/// Full decision chain: degeneracies first, then the dimension-specific
/// rules (n = 1 trivial, n = 2 gamma signs, n = 3 certificates with the
/// boundary-attractor and rho fallbacks). n >= 4 is Inconclusive; only
/// simulation-based diagnostics apply there.
Verdict analyze(const SystemSpec& spec);

}  // namespace permanence
