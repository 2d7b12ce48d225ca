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


#include "optchan/fixtures.hpp"

#include "optchan/choi.hpp"
#include "optchan/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace optchan::fixtures {

using namespace std::complex_literals;

Matrix diag2(double a, double b) {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 0) = a;
  r(1, 1) = b;
  return r;
}

TransportProblem energy_problem(double eps, double coupling, bool flip) {
  TransportProblem p{Dims{2, 2}, energy_example_cost(eps, coupling), {}, {}};
  if (flip) p.constraints.push_back({diag2(0, 1), diag2(1, 0)});
  return p;
}

TransportProblem time_problem(double k, bool flip) {
  TransportProblem p{Dims{2, 2}, time_example_cost(k), {}, {}};
  if (flip) p.constraints.push_back({diag2(1, 0), diag2(0, 1)});
  return p;
}

TransportProblem minimal_disturbance_problem(const GeneratorSet& generators) {
  const Index m = generators.dim();
  return {Dims{m, m}, cost_quadratic_generators(generators), {}, {}};
}

double energy_unconstrained_optimum(double eps, double coupling) {
  return -std::sqrt(coupling * coupling + eps * eps / 4.0);
}

double time_flip_optimum(double k) { return k <= 1.0 ? k : 1.0 + k / 2.0 - 1.0 / (2.0 * k); }

Matrix time_flip_channel_choi(double k) {
  return choi_matrix_of(Dims{2, 2}, [k](const Matrix& r) -> Matrix {
    Matrix out(2, 2);
    out << r(1, 1) / (k * k), r(1, 0) / k,
           r(0, 1) / k,       r(0, 0) + (1.0 - 1.0 / (k * k)) * r(1, 1);
    return out;
  });
}

Matrix energy_strong_coupling_choi(double gamma) {
  return choi_matrix_of(Dims{2, 2}, [gamma](const Matrix& r) -> Matrix {
    const Complex g(0.0, gamma);
    const Complex tr = r.trace();
    Matrix out(2, 2);
    out << tr - g * (r(0, 1) - r(1, 0)), r(0, 1) + r(1, 0) - g * (r(0, 0) - r(1, 1)),
           r(0, 1) + r(1, 0) + g * (r(0, 0) - r(1, 1)), tr + g * (r(0, 1) - r(1, 0));
    return 0.5 * out;
  });
}

bool Check::passed() const {
  switch (kind) {
    case Kind::Near: return std::abs(actual - expected) <= tolerance;
    case Kind::AtLeast: return actual >= expected - tolerance;
    case Kind::AtMost: return actual <= expected + tolerance;
  }
  return false;
}

namespace {

using Kind = Check::Kind;

double distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

std::vector<Check> energy_checks(const PaperParams& prm) {
  std::vector<Check> checks;
  const double eps = prm.eps, j = prm.coupling;
  const double lowest = -std::sqrt(j * j + eps * eps);

  const CostMatrix cost = energy_example_cost(eps, j);
  const auto eig = eig_hermitian(cost.matrix);
  checks.push_back({"lowest eigenvalue -sqrt(J^2+eps^2)", Kind::Near, lowest, eig.eigenvalues(0), 1e-9});
  checks.push_back({"second eigenvalue J", Kind::Near, j, eig.eigenvalues(1), 1e-9});
  const Dims d{2, 2};
  checks.push_back({"entropy of J eigenvector (bits)", Kind::Near, 1.0,
                    entanglement_entropy(eig.eigenvectors.col(1), d), 1e-8});
  checks.push_back({"entropy of lowest eigenvector below 1 bit", Kind::AtMost, 1.0 - 1e-6,
                    entanglement_entropy(eig.eigenvectors.col(0), d), 0.0});

  auto flip = energy_problem(eps, j, true);
  flip.options = prm.options;
  const Solution constrained = solve(flip);
  const Matrix flip_choi = channel_to_choi(unitary_channel(pauli(1))).matrix();
  checks.push_back({"flip-constrained optimal cost J", Kind::Near, j, constrained.cost_value, 1e-5});
  checks.push_back({"flip-constrained kappa* = Choi(sigma_x)", Kind::Near, 0.0,
                    distance(constrained.kappa_star, flip_choi), 1e-4});

  auto free = energy_problem(eps, j, false);
  free.options = prm.options;
  const Solution unconstrained = solve(free);
  checks.push_back({"unconstrained optimal cost -sqrt(J^2+eps^2/4)", Kind::Near,
                    energy_unconstrained_optimum(eps, j), unconstrained.cost_value, 1e-5});
  checks.push_back({"unconstrained cost strictly above lowest eigenvalue", Kind::AtLeast,
                    lowest + 1e-6, unconstrained.cost_value, 0.0});
  return checks;
}

std::vector<Check> time_checks(const PaperParams& prm) {
  std::vector<Check> checks;
  const double k = prm.k;
  const CostMatrix cost = time_example_cost(k);
  std::vector<double> expected{0.0, k, 2.0, k + 2.0};
  std::sort(expected.begin(), expected.end());
  const auto eig = eig_hermitian(cost.matrix);
  for (int i = 0; i < 4; ++i)
    checks.push_back({"eigenvalue " + std::to_string(i), Kind::Near, expected[i], eig.eigenvalues(i), 1e-9});

  auto free = time_problem(k, false);
  free.options = prm.options;
  const Solution unconstrained = solve(free);
  checks.push_back({"unconstrained optimal cost 0", Kind::Near, 0.0, unconstrained.cost_value, 1e-6});
  checks.push_back({"unconstrained kappa* = |Omega><Omega|", Kind::Near, 0.0,
                    distance(unconstrained.kappa_star, projector(omega(2))), 1e-4});

  auto flip = time_problem(k, true);
  flip.options = prm.options;
  const Solution constrained = solve(flip);
  checks.push_back({"flip-constrained optimal cost", Kind::Near, time_flip_optimum(k),
                    constrained.cost_value, 1e-5});
  const Matrix reference = k >= 1.0 ? time_flip_channel_choi(k)
                                    : channel_to_choi(unitary_channel(pauli(1))).matrix();
  checks.push_back({k >= 1.0 ? "kappa* = Choi of the k>=1 optimal channel" : "kappa* = Choi(U2)",
                    Kind::Near, 0.0, distance(constrained.kappa_star, reference), 1e-4});
  if (k > 1.0 && constrained.status == SolveStatus::Converged) {
    const auto transitions = decompose_elementary(constrained.choi());
    const double small = 0.5 * (1.0 - 1.0 / (k * k)), large = 0.5 * (1.0 + 1.0 / (k * k));
    checks.push_back({"number of elementary transitions", Kind::Near, 2.0,
                      static_cast<double>(transitions.size()), 0.0});
    if (transitions.size() == 2) {
      checks.push_back({"weight of entangled transition", Kind::Near, large, transitions[0].probability, 1e-4});
      checks.push_back({"weight of separable transition", Kind::Near, small, transitions[1].probability, 1e-4});
    }
  }
  return checks;
}

std::vector<Check> mindisturb_checks(const PaperParams& prm) {
  std::vector<Check> checks;
  const std::vector<std::pair<std::string, GeneratorSet>> sets = {
      {"spin r=1", spin_generator_set(1)},
      {"spin r=2", spin_generator_set(2)},
      {"schwinger m=2", schwinger_generator_set(2)},
      {"schwinger m=4", schwinger_generator_set(4)},
  };
  for (const auto& [label, gens] : sets) {
    auto problem = minimal_disturbance_problem(gens);
    problem.options = prm.options;
    const Vector om = omega(gens.dim());
    checks.push_back({label + ": |C Omega|", Kind::Near, 0.0, (problem.cost.matrix * om).norm(), 1e-10});
    const Solution s = solve(problem);
    checks.push_back({label + ": optimal cost", Kind::AtMost, 0.0, s.cost_value, 1e-6});
    checks.push_back({label + ": kappa* = |Omega><Omega|", Kind::Near, 0.0,
                      distance(s.kappa_star, projector(om)), 1e-3});
  }
  return checks;
}

}  // namespace

std::vector<Check> run_paper_example(const std::string& id, const PaperParams& params) {
  if (id == "energy") return energy_checks(params);
  if (id == "time") return time_checks(params);
  if (id == "mindisturb") return mindisturb_checks(params);
  throw std::invalid_argument("unknown example id '" + id + "' (expected energy, time or mindisturb)");
}

}  // namespace optchan::fixtures
