#include "permanence/lp.hpp"

#include <cmath>
#include <vector>

namespace permanence::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr long kMaxIterations = 100000;

struct Tableau {
  Eigen::MatrixXd T;        // m x (ncols + 1), last column is the rhs
  Eigen::VectorXd reduced;  // relative profits per column
  double z = 0.0;           // current objective value
  std::vector<int> basis;   // basic variable per row
  int ncols = 0;
  int first_artificial = -1;  // artificial columns may never re-enter

  int m() const { return static_cast<int>(T.rows()); }

  void pivot(int row, int col) {
    T.row(row) /= T(row, col);
    for (int i = 0; i < m(); ++i) {
      if (i == row) continue;
      double factor = T(i, col);
      if (factor != 0.0) T.row(i) -= factor * T.row(row);
    }
    double rfac = reduced[col];
    if (rfac != 0.0) {
      reduced -= rfac * T.row(row).head(ncols);
      z += rfac * T(row, ncols);
    }
    basis[row] = col;
  }

  // Bland's rule: smallest eligible entering column, smallest basic index
  // on ratio ties. Returns Optimal, Unbounded or NumericalFailure.
  Status run(bool allow_artificials) {
    for (long iter = 0; iter < kMaxIterations; ++iter) {
      int enter = -1;
      int limit = allow_artificials ? ncols : (first_artificial < 0 ? ncols : first_artificial);
      for (int j = 0; j < limit; ++j) {
        if (reduced[j] > kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m(); ++i) {
        if (T(i, enter) <= kPivotTol) continue;
        double ratio = T(i, ncols) / T(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
    return Status::NumericalFailure;
  }
};

}  // namespace

Result solve_max(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                 const Eigen::VectorXd& obj) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());

  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) artificial_rows.push_back(i);
  }
  const int na = static_cast<int>(artificial_rows.size());

  Tableau tab;
  tab.ncols = n + m + na;
  tab.first_artificial = na > 0 ? n + m : -1;
  tab.T = Eigen::MatrixXd::Zero(m, tab.ncols + 1);
  tab.basis.assign(m, -1);

  int art = 0;
  for (int i = 0; i < m; ++i) {
    double sign = b[i] < 0.0 ? -1.0 : 1.0;
    tab.T.row(i).head(n) = sign * A.row(i);
    tab.T(i, n + i) = sign;
    tab.T(i, tab.ncols) = sign * b[i];
    if (b[i] < 0.0) {
      tab.T(i, n + m + art) = 1.0;
      tab.basis[i] = n + m + art;
      ++art;
    } else {
      tab.basis[i] = n + i;
    }
  }

  Result result;

  if (na > 0) {
    // Phase 1: maximize -(sum of artificials).
    tab.reduced = Eigen::VectorXd::Zero(tab.ncols);
    for (int j = n + m; j < tab.ncols; ++j) tab.reduced[j] = -1.0;
    tab.z = 0.0;
    for (int i : artificial_rows) {
      tab.reduced += tab.T.row(i).head(tab.ncols);
      tab.z -= tab.T(i, tab.ncols);
    }
    // The artificial columns must stay priced out of their own rows.
    for (int i : artificial_rows) tab.reduced[tab.basis[i]] = 0.0;

    Status s = tab.run(true);
    if (s == Status::NumericalFailure) {
      result.status = s;
      return result;
    }
    if (tab.z < -1e-7) {
      result.status = Status::Infeasible;
      return result;
    }
    // Drive leftover artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < n + m) continue;
      for (int j = 0; j < n + m; ++j) {
        if (std::abs(tab.T(i, j)) > kPivotTol) {
          tab.pivot(i, j);
          break;
        }
      }
      // A row that cannot be pivoted is redundant; its artificial stays
      // basic at level zero and is barred from re-entering.
    }
  }

  // Phase 2 with the real objective.
  tab.reduced = Eigen::VectorXd::Zero(tab.ncols);
  tab.reduced.head(n) = obj;
  tab.z = 0.0;
  for (int i = 0; i < m; ++i) {
    int bi = tab.basis[i];
    double cost = bi < n ? obj[bi] : 0.0;
    if (cost != 0.0) {
      tab.reduced -= cost * tab.T.row(i).head(tab.ncols);
      tab.z += cost * tab.T(i, tab.ncols);
    }
  }

  Status s = tab.run(false);
  if (s != Status::Optimal) {
    result.status = s;
    return result;
  }

  result.status = Status::Optimal;
  result.objective = tab.z;
  result.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) result.x[tab.basis[i]] = tab.T(i, tab.ncols);
  }
  return result;
}

}  // namespace permanence::lp
