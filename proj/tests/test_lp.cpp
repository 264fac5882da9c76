#include "permanence/lp.hpp"

#include <doctest.h>

#include <random>

using permanence::lp::Result;
using permanence::lp::Status;
using permanence::lp::solve_max;

TEST_CASE("simple bounded maximization") {
  // max x + y s.t. x <= 2, y <= 3, x + y <= 4.
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd b(3);
  b << 2, 3, 4;
  Eigen::VectorXd c(2);
  c << 1, 1;
  Result r = solve_max(A, b, c);
  REQUIRE(r.status == Status::Optimal);
  CHECK(r.objective == doctest::Approx(4.0));
}

TEST_CASE("negative right-hand sides go through phase 1") {
  // max -x s.t. -x <= -1 (x >= 1), x <= 5.
  Eigen::MatrixXd A(2, 1);
  A << -1, 1;
  Eigen::VectorXd b(2);
  b << -1, 5;
  Eigen::VectorXd c(1);
  c << -1;
  Result r = solve_max(A, b, c);
  REQUIRE(r.status == Status::Optimal);
  CHECK(r.objective == doctest::Approx(-1.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
}

TEST_CASE("infeasible systems are detected") {
  // x <= 1 and x >= 2.
  Eigen::MatrixXd A(2, 1);
  A << 1, -1;
  Eigen::VectorXd b(2);
  b << 1, -2;
  Eigen::VectorXd c(1);
  c << 1;
  CHECK(solve_max(A, b, c).status == Status::Infeasible);
}

TEST_CASE("unbounded problems are detected") {
  Eigen::MatrixXd A(1, 2);
  A << 1, -1;
  Eigen::VectorXd b(1);
  b << 1;
  Eigen::VectorXd c(2);
  c << 0, 1;
  CHECK(solve_max(A, b, c).status == Status::Unbounded);
}

TEST_CASE("optima agree with a vertex enumeration oracle on random LPs") {
  // Oracle: brute-force all 2-subsets of active constraints in 2 variables.
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> dist(-1.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 4;
    Eigen::MatrixXd A(m, 2);
    Eigen::VectorXd b(m), c(2);
    for (int i = 0; i < m; ++i) {
      A(i, 0) = dist(rng);
      A(i, 1) = dist(rng);
      b[i] = std::abs(dist(rng)) + 0.1;  // origin feasible, so never infeasible
    }
    c << dist(rng), dist(rng);

    // Enumerate candidate vertices: intersections of constraint/axis pairs.
    std::vector<Eigen::Vector2d> candidates;
    candidates.emplace_back(0, 0);
    auto add_if_valid = [&](const Eigen::Vector2d& p) {
      if (!(p[0] >= -1e-9 && p[1] >= -1e-9)) return;
      for (int i = 0; i < m; ++i) {
        if (A.row(i).dot(p) > b[i] + 1e-9) return;
      }
      candidates.push_back(p);
    };
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        Eigen::Matrix2d M;
        M << A(i, 0), A(i, 1), A(j, 0), A(j, 1);
        if (std::abs(M.determinant()) < 1e-9) continue;
        add_if_valid(M.inverse() * Eigen::Vector2d(b[i], b[j]));
      }
      if (std::abs(A(i, 0)) > 1e-9) add_if_valid({b[i] / A(i, 0), 0});
      if (std::abs(A(i, 1)) > 1e-9) add_if_valid({0, b[i] / A(i, 1)});
    }
    double best = -1e300;
    for (const auto& p : candidates) best = std::max(best, c.dot(p));

    Result r = solve_max(A, b, c);
    if (r.status == Status::Unbounded) continue;  // oracle only covers bounded cases
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.objective == doctest::Approx(best).epsilon(1e-6));
  }
}
