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


#include "optchan/diagnostics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace optchan {

RealVector schmidt_coefficients(const Vector& v, Dims dims) {
  if (v.size() != dims.total()) throw std::invalid_argument("schmidt_coefficients: vector length must be m*n");
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "schmidt_coefficients: not a unit vector (norm " << v.norm() << ")";
    throw std::invalid_argument(msg.str());
  }
  const RealVector ascending = eig_hermitian(partial_trace(projector(v), dims, Subsystem::B)).eigenvalues;
  return ascending.reverse().cwiseMax(0.0);
}

double shannon_entropy_bits(const RealVector& probabilities) {
  double h = 0.0;
  for (double p : probabilities)
    if (p > 0.0) h -= p * std::log2(p);
  return h;
}

double entanglement_entropy(const Vector& v, Dims dims) {
  return shannon_entropy_bits(schmidt_coefficients(v, dims));
}

TransitionReport report_transition(const ElementaryTransition& t, const CostMatrix* cost) {
  TransitionReport r;
  r.probability = t.probability;
  if (cost) r.cost = std::real(t.pure_vector.dot(cost->matrix * t.pure_vector));
  r.schmidt_coeffs = schmidt_coefficients(t.pure_vector, t.dims);
  r.entanglement_entropy = shannon_entropy_bits(r.schmidt_coeffs);
  r.support_dim = transition_support(t).dim;
  r.is_channel = is_channel(t);
  r.degenerate_group = t.degenerate_group;
  r.degenerate = t.degenerate;
  return r;
}

std::vector<TransitionReport> transition_table(const ChoiState& choi, const CostMatrix* cost) {
  if (cost && !(cost->dims == choi.dims()))
    throw std::invalid_argument("transition_table: cost matrix dims differ from the Choi state");
  std::vector<TransitionReport> out;
  for (const auto& t : decompose_elementary(choi)) out.push_back(report_transition(t, cost));
  return out;
}

FullReport full_report(const Solution& solution, const CostMatrix& cost) {
  if (solution.status != SolveStatus::Converged)
    throw std::invalid_argument("full_report: solution status is " + to_string(solution.status) +
                                ", expected Converged");
  const ChoiState choi = solution.choi();
  FullReport report;
  report.transitions = transition_table(choi, &cost);
  report.summary.total_cost = frobenius_inner(cost.matrix, choi.matrix());
  for (const auto& t : report.transitions) {
    report.summary.aggregated_cost += t.probability * t.cost;
    report.summary.weighted_entropy += t.probability * t.entanglement_entropy;
    report.summary.total_probability += t.probability;
  }
  const double gap = std::abs(report.summary.aggregated_cost - report.summary.total_cost);
  if (gap > kAggregationTolerance) {
    std::ostringstream msg;
    msg << "full_report: transition costs aggregate to " << report.summary.aggregated_cost
        << " but Tr(C kappa) = " << report.summary.total_cost;
    throw std::logic_error(msg.str());
  }
  return report;
}

}  // namespace optchan
