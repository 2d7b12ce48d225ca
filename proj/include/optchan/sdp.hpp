// Copyright 2026 The optchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Optimal channel search as a small dense semidefinite program:
//
//   minimize   Tr(C kappa)
//   subject to kappa >= 0,  Tr_B kappa = I_m / m,
//              m Tr_A[(rho_j^T (x) I) kappa] = sigma_j   for each pair (rho_j, sigma_j).
//
// Solved by over-relaxed ADMM between the affine constraint set (cached SVD
// projector) and the PSD cone, in the real coordinates of vectorize_hermitian,
// on the face of the cone that the constraints force kappa into.

#pragma once

#include "optchan/choi.hpp"
#include "optchan/cost.hpp"
#include "optchan/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace optchan {

struct SolverOptions {
  double tol = 1e-8;
  int max_iters = 50000;
  double over_relaxation = 1.6;  // in [1, 2)
  double penalty = 1.0;          // initial ADMM step; adapted during the run

  void validate() const;
};

/// E(input) = output
struct ConstraintPair {
  Matrix input;   // m x m density matrix
  Matrix output;  // n x n density matrix
};

struct TransportProblem {
  Dims dims;
  CostMatrix cost;
  std::vector<ConstraintPair> constraints;
  SolverOptions options;

  /// Checks dims, Hermiticity of C and that every constraint state is a density matrix.
  void validate() const;
};

enum class SolveStatus { Converged, MaxIters, Infeasible };

std::string to_string(SolveStatus status);
/// Process exit code for a status: 0 converged, 2 infeasible, 3 iteration budget.
int exit_code(SolveStatus status);

struct Solution {
  Dims dims;
  Matrix kappa_star;
  double cost_value = 0.0;
  double primal_residual = 0.0;  // ||A vec(kappa) - b||
  double dual_residual = 0.0;
  double reduction_residual = 0.0;
  std::vector<double> constraint_residuals;
  int iterations = 0;
  SolveStatus status = SolveStatus::MaxIters;
  double tolerance = 0.0;

  /// kappa_star as a validated Choi state at 10 * tolerance.
  ChoiState choi() const;
};

/// Isometry from d x d Hermitian matrices onto R^(d^2): the diagonal first,
/// then sqrt(2) Re x_ij, sqrt(2) Im x_ij for i < j in row-major order.
RealVector vectorize_hermitian(const Matrix& x);
Matrix devectorize_hermitian(const RealVector& v, Index d);

/// Real linear equations on vectorize_hermitian(kappa): m^2 rows for the
/// A-marginal, then n^2 rows per constraint pair. Redundant rows are kept.
struct AffineSystem {
  Eigen::MatrixXd matrix;
  RealVector rhs;
};

AffineSystem build_affine_system(const TransportProblem& problem);

Solution solve(const TransportProblem& problem,
               const std::optional<Matrix>& warm_start = std::nullopt);

/// Thrown by feasible_sample when no feasible point is reached.
class SolveFailure : public std::runtime_error {
 public:
  SolveFailure(SolveStatus status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  SolveStatus status() const { return status_; }

 private:
  SolveStatus status_;
};

/// A feasible Choi state reached by the solver's iteration with a zero
/// objective, started from a seeded random density matrix. Carries no
/// optimality claim.
ChoiState feasible_sample(const TransportProblem& problem, unsigned long long seed);

struct VerificationReport {
  double cost = 0.0;
  double reduction_residual = 0.0;
  std::vector<double> constraint_residuals;
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;

  double max_residual() const;
};

VerificationReport verify_solution(const TransportProblem& problem, const Matrix& kappa);
VerificationReport verify_solution(const TransportProblem& problem, const Solution& solution);

}  // namespace optchan
