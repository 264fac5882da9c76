#pragma once

#include <Eigen/Dense>

namespace permanence::lp {

enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

struct Result {
  Status status = Status::NumericalFailure;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Maximize obj . x subject to A x <= b, x >= 0 (b may have any sign).
/// Dense two-phase tableau simplex with Bland's rule; intended for the
/// tiny, degenerate-prone problems arising from certificate feasibility.
Result solve_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                 const Eigen::VectorXd& obj);

}  // namespace permanence::lp
