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


#include "optchan/choi.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace optchan {

double KrausChannel::completeness_residual() const {
  Matrix sum = Matrix::Zero(dims.m, dims.m);
  for (const auto& v : kraus_ops) sum += v.adjoint() * v;
  return (sum - Matrix::Identity(dims.m, dims.m)).norm();
}

Matrix KrausChannel::apply(const Matrix& rho) const {
  if (rho.rows() != dims.m || rho.cols() != dims.m)
    throw std::invalid_argument("KrausChannel::apply: input must be m x m");
  Matrix out = Matrix::Zero(dims.n, dims.n);
  for (const auto& v : kraus_ops) out += v * rho * v.adjoint();
  return out;
}

KrausChannel unitary_channel(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary_channel: matrix must be square");
  return {Dims{u.cols(), u.rows()}, {u}};
}

double reduction_residual(const Matrix& x, Dims dims) {
  const Matrix reduced = partial_trace(x, dims, Subsystem::B);
  return (reduced - Matrix::Identity(dims.m, dims.m) / static_cast<double>(dims.m)).norm();
}

ChoiState ChoiState::from_matrix(Matrix kappa, Dims dims, double tolerance) {
  if (dims.m < 1 || dims.n < 1) throw std::invalid_argument("ChoiState: dimensions must be positive");
  if (kappa.rows() != dims.total() || kappa.cols() != dims.total()) {
    std::ostringstream msg;
    msg << "ChoiState: matrix is " << kappa.rows() << "x" << kappa.cols() << ", expected "
        << dims.total() << "x" << dims.total();
    throw std::invalid_argument(msg.str());
  }
  require_density(kappa, "ChoiState", std::max(tolerance, tol::kDensity));
  const double residual = optchan::reduction_residual(kappa, dims);
  if (residual > tolerance) {
    std::ostringstream msg;
    msg << "ChoiState: reduction Tr_B(kappa) = I/m violated (residual " << residual
        << ", tolerance " << tolerance << ")";
    throw std::invalid_argument(msg.str());
  }
  return ChoiState(std::move(kappa), dims);
}

double ChoiState::reduction_residual() const { return optchan::reduction_residual(kappa_, dims_); }

Matrix choi_matrix_of(Dims dims, const std::function<Matrix(const Matrix&)>& map) {
  Matrix kappa(dims.total(), dims.total());
  for (Index i = 0; i < dims.m; ++i) {
    for (Index j = 0; j < dims.m; ++j) {
      Matrix unit = Matrix::Zero(dims.m, dims.m);
      unit(i, j) = 1.0;
      const Matrix image = map(unit);
      if (image.rows() != dims.n || image.cols() != dims.n)
        throw std::invalid_argument("choi_matrix_of: map must return n x n matrices");
      kappa.block(i * dims.n, j * dims.n, dims.n, dims.n) = image / static_cast<double>(dims.m);
    }
  }
  return kappa;
}

ChoiState channel_to_choi(const KrausChannel& channel) {
  const Dims d = channel.dims;
  for (const auto& v : channel.kraus_ops) {
    if (v.rows() != d.n || v.cols() != d.m)
      throw std::invalid_argument("channel_to_choi: every Kraus operator must be n x m");
  }
  const double residual = channel.completeness_residual();
  if (residual > 1e-9) {
    std::ostringstream msg;
    msg << "channel_to_choi: Kraus condition sum V^dagger V = I violated (residual " << residual
        << ")";
    throw std::invalid_argument(msg.str());
  }
  Matrix kappa = choi_matrix_of(d, [&](const Matrix& x) { return channel.apply(x); });
  return ChoiState::from_matrix(std::move(kappa), d);
}

Matrix apply_choi_map(const Matrix& kappa, Dims dims, const Matrix& rho) {
  if (rho.rows() != dims.m || rho.cols() != dims.m) {
    std::ostringstream msg;
    msg << "apply_choi_map: input is " << rho.rows() << "x" << rho.cols() << ", expected "
        << dims.m << "x" << dims.m;
    throw std::invalid_argument(msg.str());
  }
  detail::require_bipartite(kappa, dims, "apply_choi_map");
  // m Tr_A[(rho^T (x) I) kappa] = m sum_ab rho(b, a) kappa_block(b, a)
  const Index n = dims.n;
  Matrix out = Matrix::Zero(n, n);
  for (Index a = 0; a < dims.m; ++a)
    for (Index b = 0; b < dims.m; ++b) out += rho(b, a) * kappa.block(b * n, a * n, n, n);
  return static_cast<double>(dims.m) * out;
}

Matrix choi_map_on_unit(const Matrix& kappa, Dims dims, Index i, Index j) {
  const Matrix pt = partial_transpose_A(kappa, dims);
  const Index n = dims.n;
  return static_cast<double>(dims.m) * pt.block(j * n, i * n, n, n);
}

Matrix apply_via_choi(const ChoiState& choi, const Matrix& rho) {
  return apply_choi_map(choi.matrix(), choi.dims(), rho);
}

Vector omega(Index m) {
  if (m < 1) throw std::invalid_argument("omega: dimension must be positive");
  Vector v = Vector::Zero(m * m);
  for (Index i = 0; i < m; ++i) v(i * m + i) = 1.0;
  return v / std::sqrt(static_cast<double>(m));
}

std::vector<ElementaryTransition> decompose_elementary(const ChoiState& choi) {
  const auto eig = eig_hermitian(choi.matrix());
  std::vector<ElementaryTransition> out;
  for (Index k = eig.eigenvalues.size() - 1; k >= 0; --k) {
    const double p = eig.eigenvalues(k);
    if (p <= kRankCutoff) break;
    ElementaryTransition t;
    t.probability = p;
    t.pure_vector = eig.eigenvectors.col(k);
    t.dims = choi.dims();
    out.push_back(std::move(t));
  }
  Index group = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= out.size(); ++k) {
    if (k == out.size() || out[start].probability - out[k].probability > kDegeneracyTolerance) {
      for (std::size_t q = start; q < k; ++q) {
        out[q].degenerate_group = group;
        out[q].degenerate = (k - start) > 1;
      }
      ++group;
      start = k;
    }
  }
  return out;
}

Support transition_support(const ElementaryTransition& t) {
  // For v = sum_i |i> (x) w_i, E(|psi><psi|) = m |u><u| with u = sum_i psi_i w_i,
  // so the null set is ker W and its complement is range(W^dagger W) =
  // range(transpose(Tr_B |v><v|)).
  const Matrix reduced = partial_trace(t.dual_map_choi(), t.dims, Subsystem::B).transpose();
  const auto eig = eig_hermitian(reduced);
  Support s;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k)
    if (eig.eigenvalues(k) > kSupportCutoff) ++s.dim;
  s.basis = eig.eigenvectors.rightCols(s.dim);
  return s;
}

double channel_defect(const ElementaryTransition& t) {
  return reduction_residual(t.dual_map_choi(), t.dims);
}

bool is_channel(const ElementaryTransition& t) { return channel_defect(t) <= kChannelTolerance; }

}  // namespace optchan
