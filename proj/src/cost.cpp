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


#include "optchan/cost.hpp"

#include "optchan/choi.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace optchan {

std::string to_string(CostRecipe recipe) {
  switch (recipe) {
    case CostRecipe::Raw: return "raw";
    case CostRecipe::Mixture: return "mixture";
    case CostRecipe::ObservableDifference: return "observable_difference";
    case CostRecipe::QuadraticGenerators: return "quadratic_generators";
    case CostRecipe::EnergyExample: return "energy_example";
    case CostRecipe::TimeExample: return "time_example";
    case CostRecipe::WeightedSum: return "weighted_sum";
  }
  return "unknown";
}

CostMatrix make_raw_cost(Matrix c, Dims dims) {
  detail::require_bipartite(c, dims, "cost matrix");
  require_hermitian(c, "cost matrix");
  return {dims, std::move(c), CostRecipe::Raw, {}};
}

CostMatrix weighted_sum(std::span<const std::pair<double, CostMatrix>> terms) {
  if (terms.empty()) throw std::invalid_argument("weighted_sum: no terms");
  CostMatrix out{terms.front().second.dims, Matrix::Zero(terms.front().second.matrix.rows(),
                                                         terms.front().second.matrix.cols()),
                 CostRecipe::WeightedSum, {}};
  for (const auto& [weight, cost] : terms) {
    if (!(cost.dims == out.dims))
      throw std::invalid_argument("weighted_sum: terms have different dimensions");
    out.matrix += weight * cost.matrix;
    out.warnings.insert(out.warnings.end(), cost.warnings.begin(), cost.warnings.end());
  }
  return out;
}

Matrix pauli(int which) {
  using namespace std::complex_literals;
  Matrix s(2, 2);
  switch (which) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -1i, 1i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be 0..3");
  }
  return s;
}

CostMatrix cost_from_pure_mixture(Dims dims, std::span<const PureTerm> terms) {
  const Index d = dims.total();
  CostMatrix out{dims, Matrix::Zero(d, d), CostRecipe::Mixture, {}};
  Matrix gram_vectors(d, static_cast<Index>(terms.size()));
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const auto& v = terms[a].state;
    if (v.size() != d) {
      std::ostringstream msg;
      msg << "cost_from_pure_mixture: term " << a << " has length " << v.size() << ", expected "
          << d;
      throw std::invalid_argument(msg.str());
    }
    if (std::abs(v.norm() - 1.0) > 1e-10) {
      std::ostringstream msg;
      msg << "cost_from_pure_mixture: term " << a << " is not a unit vector (norm " << v.norm()
          << ")";
      throw std::invalid_argument(msg.str());
    }
    out.matrix += terms[a].cost * projector(v);
    gram_vectors.col(static_cast<Index>(a)) = v;
  }
  // numerical rank of the Gram matrix = dimension of the span
  Index rank = 0;
  if (!terms.empty()) {
    const Matrix gram = gram_vectors.adjoint() * gram_vectors;
    const auto eig = eig_hermitian(gram);
    for (Index k = 0; k < eig.eigenvalues.size(); ++k)
      if (eig.eigenvalues(k) > 1e-10) ++rank;
  }
  if (rank < d) {
    std::ostringstream msg;
    msg << "mixture cost: the " << terms.size() << " states span " << rank << " of " << d
        << " dimensions; the orthogonal complement is assigned zero cost";
    out.warnings.push_back(msg.str());
  }
  return out;
}

CostMatrix cost_observable_difference(const Matrix& o_a, const Matrix& o_b) {
  require_hermitian(o_a, "observable O_A");
  require_hermitian(o_b, "observable O_B");
  const Index m = o_a.rows(), n = o_b.rows();
  Matrix c = kron(Matrix::Identity(m, m), o_b) - kron(o_a.transpose(), Matrix::Identity(n, n));
  return {Dims{m, n}, std::move(c), CostRecipe::ObservableDifference, {}};
}

namespace {

int generation_word_length(Index m) {
  int log2m = 0;
  while ((Index{1} << log2m) < m) ++log2m;
  return 2 * log2m + 2;
}

// Gram-Schmidt on vectorized matrices; returns true if x was independent.
bool extend_basis(std::vector<Vector>& basis, const Matrix& x) {
  Vector v = x.reshaped();
  const double scale = v.norm();
  if (scale == 0.0) return false;
  v /= scale;
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) v -= b.dot(v) * b;
  const double residual = v.norm();
  if (residual < 1e-9) return false;
  basis.push_back(v / residual);
  return true;
}

}  // namespace

Index generated_algebra_dimension(std::span<const Matrix> generators, int max_length) {
  if (generators.empty()) return 1;
  const Index m = generators.front().rows();
  std::vector<Vector> basis;
  extend_basis(basis, Matrix::Identity(m, m));
  std::vector<Matrix> frontier;
  for (const auto& g : generators)
    if (extend_basis(basis, g)) frontier.push_back(g);
  for (int length = 2; length <= max_length && !frontier.empty(); ++length) {
    if (static_cast<Index>(basis.size()) == m * m) break;
    std::vector<Matrix> next;
    for (const auto& word : frontier) {
      for (const auto& g : generators) {
        Matrix product = word * g;
        if (extend_basis(basis, product)) next.push_back(std::move(product));
      }
    }
    frontier = std::move(next);
  }
  return static_cast<Index>(basis.size());
}

GeneratorSet GeneratorSet::make(std::vector<Matrix> generators, bool check_generation) {
  if (generators.empty()) throw std::invalid_argument("GeneratorSet: no generators");
  const Index m = generators.front().rows();
  for (std::size_t j = 0; j < generators.size(); ++j) {
    require_hermitian(generators[j], "generator " + std::to_string(j));
    if (generators[j].rows() != m)
      throw std::invalid_argument("GeneratorSet: generators have different dimensions");
  }
  if (check_generation) {
    const int length = generation_word_length(m);
    const Index span = generated_algebra_dimension(generators, length);
    if (span != m * m) {
      std::ostringstream msg;
      msg << "GeneratorSet: products up to length " << length << " span " << span
          << " dimensions, the full algebra needs " << m * m;
      throw std::invalid_argument(msg.str());
    }
  }
  return GeneratorSet(m, std::move(generators));
}

CostMatrix cost_quadratic_generators(const GeneratorSet& generators) {
  const Index m = generators.dim();
  const Matrix id = Matrix::Identity(m, m);
  Matrix c = Matrix::Zero(m * m, m * m);
  for (const auto& g : generators.generators()) {
    const Matrix diff = kron(id, g) - kron(g.transpose(), id);
    c += diff.adjoint() * diff;
  }
  return {Dims{m, m}, std::move(c), CostRecipe::QuadraticGenerators, {}};
}

GeneratorSet spin_generator_set(int spins, bool check_generation) {
  if (spins < 1) throw std::invalid_argument("spin_generator_set: need at least one spin");
  std::vector<Matrix> gens;
  for (int i = 0; i < spins; ++i) {
    for (int axis = 1; axis <= 3; ++axis) {
      Matrix g = Matrix::Identity(1, 1);
      for (int site = 0; site < spins; ++site) g = kron(g, site == i ? pauli(axis) : pauli(0));
      gens.push_back(std::move(g));
    }
  }
  return GeneratorSet::make(std::move(gens), check_generation);
}

Matrix fourier_matrix(Index m) {
  if (m < 1) throw std::invalid_argument("fourier_matrix: dimension must be positive");
  Matrix f(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (Index j = 0; j < m; ++j)
    for (Index k = 0; k < m; ++k)
      f(j, k) = std::polar(norm, -2.0 * std::numbers::pi * static_cast<double>((j * k) % m) /
                                     static_cast<double>(m));
  return f;
}

SchwingerPair schwinger_pair(Index m) {
  if (m < 2) throw std::invalid_argument("schwinger_pair: dimension must be at least 2");
  Matrix h1 = Matrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) h1(j, j) = static_cast<double>(j);
  const Matrix f = fourier_matrix(m);
  Matrix h2 = f.adjoint() * h1 * f;
  // exact Hermitian symmetry; the product leaves rounding-level asymmetry
  h2 = (0.5 * (h2 + h2.adjoint())).eval();
  return {std::move(h1), std::move(h2)};
}

GeneratorSet schwinger_generator_set(Index m, bool check_generation) {
  auto pair = schwinger_pair(m);
  return GeneratorSet::make({std::move(pair.position), std::move(pair.momentum)}, check_generation);
}

CostMatrix energy_example_cost(double eps, double coupling) {
  if (!(eps > 0.0)) throw std::invalid_argument("energy_example_cost: eps must be positive");
  if (!(coupling < 0.0)) throw std::invalid_argument("energy_example_cost: J must be negative");
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = eps / 2;
  h(1, 1) = -eps / 2;
  // H is real diagonal, so the transposed difference form equals I(x)H - H(x)I.
  CostMatrix c = cost_observable_difference(h, h);
  c.matrix += coupling * kron(pauli(1), pauli(1));
  c.provenance = CostRecipe::EnergyExample;
  return c;
}

std::array<Matrix, 4> time_example_unitaries() {
  const Matrix u1 = pauli(0), u2 = pauli(1), u3 = pauli(3);
  return {u1, u2, u3, u3 * u2};
}

CostMatrix time_example_cost(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("time_example_cost: k must be positive");
  const auto units = time_example_unitaries();
  const std::array<double, 4> costs{0.0, k, 2.0, k + 2.0};
  const Vector om = omega(2);
  std::vector<PureTerm> terms;
  for (std::size_t j = 0; j < units.size(); ++j)
    terms.push_back({costs[j], kron(pauli(0), units[j]) * om});
  CostMatrix c = cost_from_pure_mixture(Dims{2, 2}, terms);
  c.provenance = CostRecipe::TimeExample;
  return c;
}

}  // namespace optchan
