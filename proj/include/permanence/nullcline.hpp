#pragma once

#include "permanence/equilibria.hpp"
#include "permanence/model.hpp"

#include <array>
#include <optional>

namespace permanence {

enum class Sign { Negative, Zero, Positive };

/// Sign with a tolerance band: |v| <= tol counts as Zero.
Sign sign_of(double v, double tol);
char sign_char(Sign s);

/// Zero-band width for all classification sign decisions on this spec.
double classification_tol(const SystemSpec& spec);

/// gamma_ij = b_ii c_j - b_ji c_i (i != j), 0-based indices.
double gamma(const SystemSpec& spec, int i, int j);

/// beta_ij = b_ii b_jj - b_ij b_ji (i < j).
double beta(const SystemSpec& spec, int i, int j);

/// The nullcline configuration of a three-species system: signs of the six
/// gamma_ij, signs of the three beta_ij, and for every existing planar
/// equilibrium v_k the signed value of c_k beta_ij - b_ki gamma_ji - b_kj gamma_ij.
struct SignConfiguration {
  std::array<std::array<Sign, 3>, 3> gamma_signs{};  // [i][j], diagonal unused
  Mat gamma_values;
  std::array<Sign, 3> beta_signs{};                       // pair index: 0={1,2}, 1={1,3}, 2={2,3}
  std::array<std::optional<double>, 3> planar_quantities; // k -> value iff v_k exists
  bool nullcline_stable = false;
  bool degenerate_solve = false;
};

/// Index into beta_signs for the pair {i, j}, i < j.
int pair_index(int i, int j);

SignConfiguration sign_configuration(const SystemSpec& spec);

/// Membership in nullcline class 29, tested over all six index
/// permutations (classes are permutation classes). Requires n == 3;
/// returns false when the configuration is not nullcline stable.
bool is_class_29(const SystemSpec& spec);

enum class CycleOrientation { None, Forward, Backward };

struct CyclePattern {
  CycleOrientation orientation = CycleOrientation::None;
  bool strict = false;
  bool degenerate_note = false;  // a sign tie or degenerate solve blocked the decision
};

/// Detects a May-Leonard-type boundary heteroclinic cycle: strict external
/// eigenvalue signs q1 -> q2 -> q3 -> q1 (Forward) or reversed (Backward),
/// with no planar equilibria on the boundary.
CyclePattern cycle_pattern(const SystemSpec& spec);

}  // namespace permanence
