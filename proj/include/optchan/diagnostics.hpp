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


// Entanglement and cost reporting for Choi states and their elementary transitions.

#pragma once

#include "optchan/choi.hpp"
#include "optchan/cost.hpp"
#include "optchan/sdp.hpp"

#include <vector>

namespace optchan {

/// Squared Schmidt coefficients of a unit vector on H_A (x) H_B, descending:
/// the spectrum of Tr_B |v><v|.
RealVector schmidt_coefficients(const Vector& v, Dims dims);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy_bits(const RealVector& probabilities);

/// Entanglement entropy of a pure bipartite state, in bits.
double entanglement_entropy(const Vector& v, Dims dims);

struct TransitionReport {
  double probability = 0.0;
  double cost = 0.0;  // Tr(C kappa_alpha); zero when no cost matrix was given
  double entanglement_entropy = 0.0;
  RealVector schmidt_coeffs;
  Index support_dim = 0;
  bool is_channel = false;
  Index degenerate_group = 0;
  bool degenerate = false;
};

TransitionReport report_transition(const ElementaryTransition& t, const CostMatrix* cost);

/// One report per elementary transition of the Choi state.
std::vector<TransitionReport> transition_table(const ChoiState& choi, const CostMatrix* cost);

struct ReportSummary {
  double total_cost = 0.0;         // Tr(C kappa)
  double aggregated_cost = 0.0;    // sum_alpha p_alpha Tr(C kappa_alpha)
  double weighted_entropy = 0.0;   // sum_alpha p_alpha S(kappa_alpha)
  double total_probability = 0.0;  // sum_alpha p_alpha
};

struct FullReport {
  std::vector<TransitionReport> transitions;
  ReportSummary summary;
};

inline constexpr double kAggregationTolerance = 1e-8;

/// Transition table and summary for a converged solution. Throws
/// std::invalid_argument for non-converged solutions and std::logic_error
/// when the expected transition cost misses Tr(C kappa) by more than
/// kAggregationTolerance.
FullReport full_report(const Solution& solution, const CostMatrix& cost);

}  // namespace optchan
