#pragma once

#include "permanence/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace permanence {

/// A nontrivial equilibrium, identified by its support.
struct Equilibrium {
  std::vector<int> support;  // sorted indices i with x_i > 0
  Vec x;
  std::map<int, double> external_eigs;  // j outside the support -> f_j(x)
  Eigen::VectorXcd internal_spectrum;   // Jacobian restricted to the support block
};

enum class SolveStatus {
  Found,               // strictly positive solution on the support
  NoPositiveSolution,  // some component clearly nonpositive
  Degenerate,          // singular sub-block or a component inside the zero band
};

struct SupportSolve {
  SolveStatus status = SolveStatus::NoPositiveSolution;
  std::optional<Equilibrium> eq;
  std::string note;
};

/// The n axial equilibria q_i = (c_i / b_ii) e_i.
std::vector<Equilibrium> axial_equilibria(const SystemSpec& spec);

/// Solves B_kk x_k = c_k on the given support. Degeneracy (singular block,
/// condition estimate above 1e12, or a component within 1e-9 relative of 0)
/// is a first-class outcome, not an exception.
SupportSolve equilibrium_on_support(const SystemSpec& spec, const std::vector<int>& support);

struct BoundarySet {
  std::vector<Equilibrium> equilibria;  // sorted by support size, then lexicographically
  bool degenerate = false;
  std::vector<std::string> notes;
};

/// All equilibria over nonempty proper-subset supports.
BoundarySet boundary_equilibria(const SystemSpec& spec);

/// Theta_ij = f_j(q_i), the external-eigenvalue matrix of the three axial
/// equilibria; zero diagonal. Requires n == 3.
Mat characteristic_matrix(const SystemSpec& spec);

}  // namespace permanence
