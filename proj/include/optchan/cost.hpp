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


// Cost matrices: Hermitian observables C on H_A (x) H_B, with K_C(E) = Tr(C kappa_E).

#pragma once

#include "optchan/linalg.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace optchan {

enum class CostRecipe {
  Raw,
  Mixture,
  ObservableDifference,
  QuadraticGenerators,
  EnergyExample,
  TimeExample,
  WeightedSum,
};

std::string to_string(CostRecipe recipe);

struct CostMatrix {
  Dims dims;
  Matrix matrix;
  CostRecipe provenance = CostRecipe::Raw;
  std::vector<std::string> warnings;
};

/// Wraps an explicit matrix; rejects non-Hermitian input.
CostMatrix make_raw_cost(Matrix c, Dims dims);

/// sum_w w * C_w; all terms must share dims.
CostMatrix weighted_sum(std::span<const std::pair<double, CostMatrix>> terms);

/// Pauli matrices: 0 -> I, 1 -> x, 2 -> y, 3 -> z.
Matrix pauli(int which);

struct PureTerm {
  double cost = 0.0;
  Vector state;  // unit vector in H_A (x) H_B
};

/// C = sum_a k_a |v_a><v_a|. Adds a warning when the v_a span less than the
/// whole space, since the missing directions are then assigned zero cost.
CostMatrix cost_from_pure_mixture(Dims dims, std::span<const PureTerm> terms);

/// I_A (x) O_B - O_A^T (x) I_B
CostMatrix cost_observable_difference(const Matrix& o_a, const Matrix& o_b);

/// Hermitian generators g_1..g_v of the full matrix algebra M_m.
class GeneratorSet {
 public:
  /// With check_generation, throws unless the generators span M_m under
  /// products of length up to 2 log2(m) + 2.
  static GeneratorSet make(std::vector<Matrix> generators, bool check_generation = true);

  Index dim() const { return dim_; }
  const std::vector<Matrix>& generators() const { return generators_; }

 private:
  GeneratorSet(Index dim, std::vector<Matrix> generators)
      : dim_(dim), generators_(std::move(generators)) {}

  Index dim_;
  std::vector<Matrix> generators_;
};

/// Dimension of the span of all words (including the empty word I) in the
/// generators of length at most max_length.
Index generated_algebra_dimension(std::span<const Matrix> generators, int max_length);

/// sum_j |I (x) g_j - g_j^T (x) I|^2; positive semidefinite and annihilates omega(m).
CostMatrix cost_quadratic_generators(const GeneratorSet& generators);

/// The 3r single-spin Pauli observables on m = 2^r, ordered by (spin, axis).
GeneratorSet spin_generator_set(int spins, bool check_generation = true);

/// F_jk = exp(-2 pi i jk / m) / sqrt(m)
Matrix fourier_matrix(Index m);

struct SchwingerPair {
  Matrix position;  // diag(0, 1, ..., m-1)
  Matrix momentum;  // F^dagger position F
};

SchwingerPair schwinger_pair(Index m);
GeneratorSet schwinger_generator_set(Index m, bool check_generation = true);

/// Qubit energy cost I (x) H - H (x) I + J sigma_x (x) sigma_x with
/// H = diag(eps/2, -eps/2); requires eps > 0 and J < 0.
CostMatrix energy_example_cost(double eps, double coupling);

/// The four qubit unitaries I, X, Z, ZX whose transitions define the time cost.
std::array<Matrix, 4> time_example_unitaries();

/// sum_j k_j kappa_j over the dual states of time_example_unitaries() with
/// costs (0, k, 2, k + 2); requires k > 0.
CostMatrix time_example_cost(double k);

}  // namespace optchan
