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

// Dense complex linear algebra on bipartite systems H_A (dim m) x H_B (dim n).
//
// Everything here is a template over Eigen expressions so that the same code
// serves double (the default everywhere else) and higher precision scalars.
// Composite indices are row-major in the subsystems: |i>|j> -> i * n + j.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace optchan {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

template <typename Real>
using MatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

/// Dimensions of the two factors of H_A (x) H_B.
struct Dims {
  Index m = 0;
  Index n = 0;

  Index total() const { return m * n; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { A, B };

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kDensity = 1e-9;
}  // namespace tol

namespace detail {

template <typename Derived>
using PlainOf = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
void require_bipartite(const Eigen::MatrixBase<Derived>& x, Dims dims, const char* op) {
  if (x.rows() != dims.total() || x.cols() != dims.total()) {
    std::ostringstream msg;
    msg << op << ": operator is " << x.rows() << "x" << x.cols() << " but dims (" << dims.m
        << "," << dims.n << ") require " << dims.total() << "x" << dims.total();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace detail

/// Largest entrywise deviation |x - x^dagger|; infinity for non-square input.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Derived::RealScalar;
  if (x.rows() != x.cols()) return std::numeric_limits<Real>::infinity();
  if (x.size() == 0) return Real(0);
  return (x - x.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& x, double tolerance = tol::kHermitian) {
  return hermiticity_defect(x) <= tolerance;
}

/// Rejects (never symmetrizes) a matrix that is not Hermitian within tolerance.
template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& x, const std::string& what,
                       double tolerance = tol::kHermitian) {
  if (x.rows() != x.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a square matrix, got " << x.rows() << "x" << x.cols();
    throw std::invalid_argument(msg.str());
  }
  const auto defect = hermiticity_defect(x);
  if (!(defect <= tolerance)) {
    std::ostringstream msg;
    msg << what << ": not Hermitian (max |x - x^dagger| = " << defect << ", tolerance "
        << tolerance << ")";
    throw std::invalid_argument(msg.str());
  }
}

template <typename Real>
struct EigenDecompositionT {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues;  // ascending
  MatrixT<Real> eigenvectors;                          // orthonormal columns
};
using EigenDecomposition = EigenDecompositionT<double>;

/// Hermitian eigendecomposition, eigenvalues ascending. Only the lower
/// triangle is read. Bases inside degenerate eigenspaces are whatever the
/// solver produces; callers must not rely on them.
template <typename Derived>
EigenDecompositionT<typename Derived::RealScalar> eig_hermitian(const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Derived::RealScalar;
  MatrixT<Real> h = x.template cast<std::complex<Real>>();
  Eigen::SelfAdjointEigenSolver<MatrixT<Real>> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::kroneckerProduct(a.template cast<Scalar>().eval(), b.template cast<Scalar>().eval());
  return out;
}

/// Tr_B (m x m result) or Tr_A (n x n result) of an operator on H_A (x) H_B.
template <typename Derived>
detail::PlainOf<Derived> partial_trace(const Eigen::MatrixBase<Derived>& x, Dims dims,
                                       Subsystem traced) {
  detail::require_bipartite(x, dims, "partial_trace");
  const Index m = dims.m, n = dims.n;
  if (traced == Subsystem::B) {
    detail::PlainOf<Derived> out(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) out(i, j) = x.block(i * n, j * n, n, n).trace();
    return out;
  }
  detail::PlainOf<Derived> out = detail::PlainOf<Derived>::Zero(n, n);
  for (Index i = 0; i < m; ++i) out += x.block(i * n, i * n, n, n);
  return out;
}

/// Transpose on the A factor: block (i,j) of the m x m block grid moves to (j,i).
template <typename Derived>
detail::PlainOf<Derived> partial_transpose_A(const Eigen::MatrixBase<Derived>& x, Dims dims) {
  detail::require_bipartite(x, dims, "partial_transpose_A");
  const Index n = dims.n;
  detail::PlainOf<Derived> out(x.rows(), x.cols());
  for (Index i = 0; i < dims.m; ++i)
    for (Index j = 0; j < dims.m; ++j) out.block(i * n, j * n, n, n) = x.block(j * n, i * n, n, n);
  return out;
}

/// Nearest positive semidefinite matrix in Frobenius norm.
template <typename Derived>
detail::PlainOf<Derived> psd_project(const Eigen::MatrixBase<Derived>& x) {
  const auto eig = eig_hermitian(x);
  const auto clamped = eig.eigenvalues.cwiseMax(0).template cast<typename Derived::Scalar>();
  return eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.adjoint();
}

/// Tr(a b) including any imaginary residue.
template <typename DerivedA, typename DerivedB>
auto trace_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "trace_product: incompatible shapes " << a.rows() << "x" << a.cols() << " and "
        << b.rows() << "x" << b.cols();
    throw std::invalid_argument(msg.str());
  }
  // sum_ij a_ij b_ji
  return a.cwiseProduct(b.transpose()).sum();
}

/// Tr(a b) for Hermitian a, b; the result is real.
template <typename DerivedA, typename DerivedB>
auto frobenius_inner(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return std::real(trace_product(a, b));
}

/// Rank-one projector |v><v|.
template <typename Derived>
auto projector(const Eigen::MatrixBase<Derived>& v) {
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> p = v * v.adjoint();
  return p;
}

/// Basis ket |index> of dimension dim.
inline Vector basis_ket(Index dim, Index index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

/// Density-matrix check: Hermitian, PSD (min eigenvalue >= -tolerance), unit trace.
template <typename Derived>
void require_density(const Eigen::MatrixBase<Derived>& x, const std::string& what,
                     double tolerance = tol::kDensity) {
  require_hermitian(x, what);
  const double tr = std::real(x.trace());
  if (std::abs(tr - 1.0) > tolerance) {
    std::ostringstream msg;
    msg << what << ": trace is " << tr << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  const double lmin = eig_hermitian(x).eigenvalues(0);
  if (lmin < -tolerance) {
    std::ostringstream msg;
    msg << what << ": not positive semidefinite (smallest eigenvalue " << lmin << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace optchan
