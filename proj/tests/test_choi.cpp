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
#include "optchan/cost.hpp"
#include "optchan/fixtures.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace optchan {
namespace {

Vector ket2(Index a, Index b, Index n = 2) { return basis_ket(2 * n, a * n + b); }

// Kraus form of the k >= 1 flip-constrained time channel.
std::vector<Matrix> time_flip_kraus(double k) {
  Matrix v1 = Matrix::Zero(2, 2), v2 = Matrix::Zero(2, 2);
  v1(0, 1) = 1.0 / k;
  v1(1, 0) = 1.0;
  v2(1, 1) = std::sqrt(1.0 - 1.0 / (k * k));
  return {v1, v2};
}

ElementaryTransition transition_of(const Vector& v, Dims d) {
  ElementaryTransition t;
  t.probability = 1.0;
  t.pure_vector = v / v.norm();
  t.dims = d;
  return t;
}

TEST(ChannelToChoi, Examples) {
  const auto id = channel_to_choi(unitary_channel(Matrix::Identity(2, 2)));
  Vector om(4);
  om << 1, 0, 0, 1;
  om /= std::sqrt(2.0);
  EXPECT_LT((id.matrix() - projector(om)).norm(), 1e-15);
  EXPECT_LT((omega(2) - om).norm(), 1e-15);

  const Dims d{2, 3};
  std::vector<Matrix> depol;
  for (Index i = 0; i < d.n; ++i)
    for (Index j = 0; j < d.m; ++j) {
      Matrix v = Matrix::Zero(d.n, d.m);
      v(i, j) = 1.0 / std::sqrt(double(d.n));
      depol.push_back(v);
    }
  EXPECT_LT((channel_to_choi({d, depol}).matrix() - Matrix::Identity(6, 6) / 6.0).norm(), 1e-15);

  const Vector flip = (ket2(0, 1) + ket2(1, 0)) / std::sqrt(2.0);
  EXPECT_LT((channel_to_choi(unitary_channel(pauli(1))).matrix() - projector(flip)).norm(), 1e-15);
}

TEST(ChannelToChoi, RejectsNonTracePreservingKraus) {
  KrausChannel bad{{2, 2}, {Matrix::Identity(2, 2) * 1.01}};
  try {
    channel_to_choi(bad);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos) << e.what();
  }
}

TEST(ChoiState, ValidatesInvariants) {
  EXPECT_NO_THROW(ChoiState::from_matrix(Matrix::Identity(4, 4) / 4.0, {2, 2}));
  Matrix kappa = projector(ket2(0, 0));  // Tr_B = |0><0|, not I/2
  EXPECT_THROW(ChoiState::from_matrix(kappa, {2, 2}), std::invalid_argument);
  EXPECT_THROW(ChoiState::from_matrix(Matrix::Identity(4, 4) / 4.0, {2, 3}), std::invalid_argument);
  Matrix neg = Matrix::Identity(4, 4) / 4.0;
  neg(0, 0) = -0.1;
  neg(3, 3) = 0.6;
  EXPECT_THROW(ChoiState::from_matrix(neg, {2, 2}), std::invalid_argument);
}

TEST(ApplyViaChoi, Examples) {
  oracle::Random rng(11);
  const auto id = channel_to_choi(unitary_channel(Matrix::Identity(3, 3)));
  const Matrix rho = rng.density(3);
  EXPECT_LT((apply_via_choi(id, rho) - rho).norm(), 1e-14);

  const auto flip = channel_to_choi(unitary_channel(pauli(1)));
  EXPECT_LT((apply_via_choi(flip, fixtures::diag2(1, 0)) - fixtures::diag2(0, 1)).norm(), 1e-15);

  const auto tk = ChoiState::from_matrix(fixtures::time_flip_channel_choi(2.0), {2, 2});
  EXPECT_LT((apply_via_choi(tk, fixtures::diag2(0, 1)) - fixtures::diag2(0.25, 0.75)).norm(), 1e-14);
  // The reference Choi matrix agrees with its Kraus form.
  EXPECT_LT((tk.matrix() - oracle::choi_from_kraus(time_flip_kraus(2.0), {2, 2})).norm(), 1e-14);
  EXPECT_THROW(apply_via_choi(tk, Matrix::Identity(3, 3) / 3.0), std::invalid_argument);
}

TEST(ChoiProperty, RoundTripOverRandomChannels) {
  oracle::Random rng(12);
  for (int t = 0; t < 120; ++t) {
    const Dims d{rng.uniform_int(1, 4), rng.uniform_int(1, 4)};
    const KrausChannel ch{d, rng.kraus(d, rng.uniform_int(1, 4))};
    const ChoiState choi = channel_to_choi(ch);
    EXPECT_LT((choi.matrix() - oracle::choi_from_kraus(ch.kraus_ops, d)).norm(), 1e-12);
    EXPECT_LT(choi.reduction_residual(), 1e-12);
    for (int r = 0; r < 3; ++r) {
      const Matrix rho = rng.density(d.m, rng.uniform_int(1, d.m));
      EXPECT_LT((apply_via_choi(choi, rho) - oracle::apply_kraus(ch.kraus_ops, rho)).norm(), 1e-9);
    }
    // Matrix-unit (partial-transpose) form against the Tr_A form.
    for (Index i = 0; i < d.m; ++i)
      for (Index j = 0; j < d.m; ++j)
        EXPECT_LT((choi_map_on_unit(choi.matrix(), d, i, j) -
                   apply_choi_map(choi.matrix(), d, oracle::unit(d.m, i, j)))
                      .norm(),
                  1e-12);
  }
}

TEST(ChoiProperty, MixtureIsAffine) {
  oracle::Random rng(13);
  for (int t = 0; t < 100; ++t) {
    const Dims d{rng.uniform_int(1, 4), rng.uniform_int(1, 4)};
    const auto k1 = rng.kraus(d, 2), k2 = rng.kraus(d, 3);
    const double lam = rng.uniform(0, 1);
    std::vector<Matrix> mix;
    for (const auto& v : k1) mix.push_back(std::sqrt(lam) * v);
    for (const auto& v : k2) mix.push_back(std::sqrt(1 - lam) * v);
    const Matrix lhs = channel_to_choi({d, mix}).matrix();
    const Matrix rhs = lam * channel_to_choi({d, k1}).matrix() + (1 - lam) * channel_to_choi({d, k2}).matrix();
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
  }
}

TEST(Decompose, Examples) {
  auto ts = decompose_elementary(ChoiState::from_matrix(projector(omega(2)), {2, 2}));
  ASSERT_EQ(ts.size(), 1u);
  EXPECT_NEAR(ts[0].probability, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(ts[0].pure_vector.dot(omega(2))), 1.0, 1e-12);
  EXPECT_FALSE(ts[0].degenerate);

  ts = decompose_elementary(ChoiState::from_matrix(fixtures::time_flip_channel_choi(2.0), {2, 2}));
  ASSERT_EQ(ts.size(), 2u);
  EXPECT_NEAR(ts[0].probability, 0.625, 1e-12);
  EXPECT_NEAR(ts[1].probability, 0.375, 1e-12);

  ts = decompose_elementary(ChoiState::from_matrix(Matrix::Identity(4, 4) / 4.0, {2, 2}));
  ASSERT_EQ(ts.size(), 4u);
  for (const auto& t : ts) {
    EXPECT_NEAR(t.probability, 0.25, 1e-12);
    EXPECT_TRUE(t.degenerate);
    EXPECT_EQ(t.degenerate_group, 0);
  }
}

TEST(DecomposeProperty, ReconstructionAndCostAdditivity) {
  oracle::Random rng(14);
  for (int t = 0; t < 120; ++t) {
    const Dims d{rng.uniform_int(1, 4), rng.uniform_int(1, 4)};
    const ChoiState choi = channel_to_choi({d, rng.kraus(d, rng.uniform_int(1, 4))});
    const auto ts = decompose_elementary(choi);
    const Matrix c = rng.hermitian(d.total());
    Matrix sum = Matrix::Zero(d.total(), d.total());
    double total_p = 0.0, cost = 0.0;
    for (std::size_t a = 0; a < ts.size(); ++a) {
      EXPECT_NEAR(ts[a].pure_vector.norm(), 1.0, 1e-10);
      EXPECT_GT(ts[a].probability, kRankCutoff);
      if (a > 0) EXPECT_GE(ts[a - 1].probability, ts[a].probability);
      sum += ts[a].probability * ts[a].dual_map_choi();
      total_p += ts[a].probability;
      cost += ts[a].probability * frobenius_inner(c, ts[a].dual_map_choi());
    }
    EXPECT_LT((sum - choi.matrix()).norm(), 1e-8);
    EXPECT_NEAR(total_p, 1.0, 1e-8);
    EXPECT_NEAR(cost, frobenius_inner(c, choi.matrix()), 1e-8);
  }
}

TEST(Support, Examples) {
  const auto e1 = transition_of(ket2(1, 1), {2, 2});
  const Support s1 = transition_support(e1);
  ASSERT_EQ(s1.dim, 1);
  EXPECT_NEAR(std::abs(s1.basis(1, 0)), 1.0, 1e-12);

  const auto ts = decompose_elementary(ChoiState::from_matrix(fixtures::time_flip_channel_choi(2.0), {2, 2}));
  EXPECT_EQ(transition_support(ts[0]).dim, 2);
  EXPECT_EQ(transition_support(ts[1]).dim, 1);
  EXPECT_EQ(transition_support(transition_of(omega(3), {3, 3})).dim, 3);
}

TEST(SupportProperty, MatchesDefinition) {
  oracle::Random rng(15);
  for (int t = 0; t < 150; ++t) {
    const Dims d{rng.uniform_int(1, 4), rng.uniform_int(1, 4)};
    // Random vector of Schmidt rank r.
    const Index r = rng.uniform_int(1, std::min(d.m, d.n));
    Vector v = Vector::Zero(d.total());
    for (Index s = 0; s < r; ++s) v += oracle::kron(rng.gaussian(d.m, 1), rng.gaussian(d.n, 1));
    const auto tr = transition_of(v, d);
    const Support sup = transition_support(tr);
    EXPECT_EQ(sup.dim, r);
    EXPECT_LT((sup.basis.adjoint() * sup.basis - Matrix::Identity(sup.dim, sup.dim)).norm(), 1e-10);
    for (Index b = 0; b < sup.dim; ++b) EXPECT_GT(tr.apply(projector(sup.basis.col(b))).norm(), 1e-6);
    const Matrix comp = Matrix::Identity(d.m, d.m) - sup.basis * sup.basis.adjoint();
    for (int s = 0; s < 5; ++s) {
      Vector psi = comp * rng.unit_vector(d.m);
      if (psi.norm() < 1e-6) continue;
      psi /= psi.norm();
      EXPECT_LE(tr.apply(projector(psi)).norm(), 1e-8);
    }
  }
}

TEST(IsChannel, Examples) {
  EXPECT_TRUE(is_channel(transition_of(omega(2), {2, 2})));
  EXPECT_FALSE(is_channel(transition_of(ket2(0, 1), {2, 2})));
  const auto eig = eig_hermitian(energy_example_cost(1.0, -1.0).matrix);
  EXPECT_FALSE(is_channel(transition_of(eig.eigenvectors.col(0), {2, 2})));
  EXPECT_TRUE(is_channel(transition_of(eig.eigenvectors.col(1), {2, 2})));
}

TEST(IsChannelProperty, ImpliesTracePreservation) {
  oracle::Random rng(16);
  for (int t = 0; t < 100; ++t) {
    const Dims d{rng.uniform_int(1, 4), 0};
    const Dims dd{d.m, rng.uniform_int(d.m, 4)};
    // Maximally entangled vector: (I (x) V) omega for an isometry V.
    const auto iso = rng.kraus({dd.m, dd.n}, 1).front();
    const Vector v = oracle::kron(Matrix::Identity(dd.m, dd.m), iso) * omega(dd.m);
    ElementaryTransition tr = transition_of(v, dd);
    ASSERT_TRUE(is_channel(tr));
    const ChoiState cs = ChoiState::from_matrix(tr.dual_map_choi(), dd);
    const Matrix rho = rng.density(dd.m);
    EXPECT_NEAR(apply_via_choi(cs, rho).trace().real(), 1.0, 1e-9);

    // A random product vector is never a channel when m > 1.
    if (dd.m > 1) EXPECT_FALSE(is_channel(transition_of(oracle::kron(rng.gaussian(dd.m, 1), rng.gaussian(dd.n, 1)), dd)));
  }
}

TEST(Omega, AnnihilatedByGeneratorDifferences) {
  oracle::Random rng(17);
  for (Index m = 1; m <= 5; ++m) {
    const Matrix g = rng.hermitian(m);
    const Matrix id = Matrix::Identity(m, m);
    EXPECT_LT(((oracle::kron(id, g) - oracle::kron(g.transpose(), id)) * omega(m)).norm(), 1e-12);
    EXPECT_LT((oracle::trace_b(projector(omega(m)), {m, m}) - id / double(m)).norm(), 1e-15);
  }
}

}  // namespace
}  // namespace optchan
