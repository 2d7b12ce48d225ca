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


// The worked qubit examples (energy and time costs) and the minimal-disturbance
// construction, packaged as ready-to-solve problems with their closed-form
// optima. Basis states are 0-indexed: |0> is the first basis vector.

#pragma once

#include "optchan/cost.hpp"
#include "optchan/sdp.hpp"

#include <string>
#include <vector>

namespace optchan::fixtures {

Matrix diag2(double a, double b);

/// Energy cost; with flip, requires E(|1><1|) = |0><0|.
TransportProblem energy_problem(double eps, double coupling, bool flip);

/// Time cost; with flip, requires E(|0><0|) = |1><1|.
TransportProblem time_problem(double k, bool flip);

/// Unconstrained quadratic-generator problem on A -> A.
TransportProblem minimal_disturbance_problem(const GeneratorSet& generators);

/// -sqrt(J^2 + eps^2 / 4)
double energy_unconstrained_optimum(double eps, double coupling);

/// k for k <= 1, 1 + k/2 - 1/(2k) for k >= 1
double time_flip_optimum(double k);

/// Choi matrix of the optimal flip channel for k >= 1:
/// rho -> [[rho_11 / k^2, rho_10 / k], [rho_01 / k, rho_00 + (1 - 1/k^2) rho_11]].
Matrix time_flip_channel_choi(double k);

/// Choi matrix of the strong-coupling optimal channel family, -1 <= gamma <= 1.
Matrix energy_strong_coupling_choi(double gamma);

struct Check {
  enum class Kind { Near, AtLeast, AtMost };

  std::string name;
  Kind kind = Kind::Near;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;

  bool passed() const;
};

struct PaperParams {
  double eps = 1.0;
  double coupling = -1.0;  // J
  double k = 2.0;
  SolverOptions options;
};

/// Runs the named example ("energy", "time" or "mindisturb") and returns the
/// comparisons against the closed-form results. Throws std::invalid_argument
/// for unknown ids.
std::vector<Check> run_paper_example(const std::string& id, const PaperParams& params);

}  // namespace optchan::fixtures
