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


// Channel <-> state duality. A channel E: L(C^m) -> L(C^n) is represented by
//
//   kappa_E = (1/m) sum_ij |i><j| (x) E(|i><j|),
//
// a density matrix on C^m (x) C^n whose A-marginal is I/m. Everything is
// expressed in the fixed computational basis |0>, ..., |m-1> of H_A; the
// partial transpose and the transpose in cost-matrix recipes refer to it.

#pragma once

#include "optchan/linalg.hpp"

#include <functional>
#include <vector>

namespace optchan {

/// E(rho) = sum_j V_j rho V_j^dagger with n x m Kraus operators V_j.
struct KrausChannel {
  Dims dims;
  std::vector<Matrix> kraus_ops;

  /// ||sum_j V_j^dagger V_j - I_m||_F
  double completeness_residual() const;
  Matrix apply(const Matrix& rho) const;
};

KrausChannel unitary_channel(const Matrix& u);

/// A validated dual state of a channel: PSD, unit trace, Tr_B = I/m.
class ChoiState {
 public:
  static constexpr double kDefaultTolerance = 1e-8;

  /// Validates the invariants at the given tolerance and throws
  /// std::invalid_argument naming the violated one.
  static ChoiState from_matrix(Matrix kappa, Dims dims, double tolerance = kDefaultTolerance);

  const Matrix& matrix() const { return kappa_; }
  Dims dims() const { return dims_; }

  /// ||Tr_B kappa - I/m||_F
  double reduction_residual() const;

 private:
  ChoiState(Matrix kappa, Dims dims) : kappa_(std::move(kappa)), dims_(dims) {}

  Matrix kappa_;
  Dims dims_;
};

/// ||Tr_B x - I/m||_F for any operator on H_A (x) H_B.
double reduction_residual(const Matrix& x, Dims dims);

/// (1/m) sum_ij |i><j| (x) map(|i><j|) for any linear map L(C^m) -> L(C^n).
/// No validation: the result is a Choi state only if the map is a channel.
Matrix choi_matrix_of(Dims dims, const std::function<Matrix(const Matrix&)>& map);

ChoiState channel_to_choi(const KrausChannel& channel);

/// The linear map dual to an arbitrary operator kappa, evaluated on rho:
/// m Tr_A[(rho^T (x) I_n) kappa]. No positivity or trace requirement on kappa.
Matrix apply_choi_map(const Matrix& kappa, Dims dims, const Matrix& rho);

/// E(|i><j|) = m (<j| (x) I) kappa^PT (|i> (x) I), the matrix-unit form.
Matrix choi_map_on_unit(const Matrix& kappa, Dims dims, Index i, Index j);

Matrix apply_via_choi(const ChoiState& choi, const Matrix& rho);

/// (1/sqrt m) sum_i |i>|i>
Vector omega(Index m);

/// A rank-one term p |v><v| of the spectral decomposition of a Choi state,
/// dual to a completely positive (not necessarily trace preserving) map.
struct ElementaryTransition {
  double probability = 0.0;
  Vector pure_vector;
  Dims dims;
  // Index of the group of (numerically) equal probabilities this transition
  // belongs to; groups are numbered in order of first appearance.
  Index degenerate_group = 0;
  bool degenerate = false;  // group has more than one member

  Matrix dual_map_choi() const { return projector(pure_vector); }
  Matrix apply(const Matrix& rho) const { return apply_choi_map(dual_map_choi(), dims, rho); }
};

/// Eigenvalues below this are not part of a decomposition.
inline constexpr double kRankCutoff = 1e-10;
/// Probabilities closer than this are reported as one degenerate group.
inline constexpr double kDegeneracyTolerance = 1e-7;

/// Spectral decomposition into elementary transitions, ordered by descending
/// probability. Only probabilities above kRankCutoff are kept.
std::vector<ElementaryTransition> decompose_elementary(const ChoiState& choi);

struct Support {
  Index dim = 0;
  Matrix basis;  // m x dim, orthonormal columns
};

/// Support of the transition: the orthogonal complement in H_A of
/// { psi : E_alpha(|psi><psi|) = 0 }.
Support transition_support(const ElementaryTransition& t);

inline constexpr double kChannelTolerance = 1e-8;
/// Eigenvalues of transpose(Tr_B kappa_alpha) above this span the support.
inline constexpr double kSupportCutoff = 1e-8;

/// ||Tr_B |v><v| - I/m||_F
double channel_defect(const ElementaryTransition& t);
bool is_channel(const ElementaryTransition& t);

}  // namespace optchan
