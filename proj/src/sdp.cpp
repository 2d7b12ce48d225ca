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


#include "optchan/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <utility>

namespace optchan {

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("solver options: tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("solver options: max_iters must be at least 1");
  if (!(over_relaxation >= 1.0 && over_relaxation < 2.0))
    throw std::invalid_argument("solver options: over_relaxation must lie in [1, 2)");
  if (!(penalty > 0.0)) throw std::invalid_argument("solver options: penalty must be positive");
}

void TransportProblem::validate() const {
  if (dims.m < 1 || dims.n < 1) throw std::invalid_argument("problem: dimensions must be positive");
  if (!(cost.dims == dims)) throw std::invalid_argument("problem: cost matrix dims differ from problem dims");
  detail::require_bipartite(cost.matrix, dims, "problem cost");
  require_hermitian(cost.matrix, "problem cost");
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const auto& pair = constraints[j];
    const std::string where = "constraint " + std::to_string(j);
    if (pair.input.rows() != dims.m || pair.input.cols() != dims.m)
      throw std::invalid_argument(where + ": input must be m x m");
    if (pair.output.rows() != dims.n || pair.output.cols() != dims.n)
      throw std::invalid_argument(where + ": output must be n x n");
    require_density(pair.input, where + " input");
    require_density(pair.output, where + " output");
  }
  options.validate();
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIters: return "MaxIters";
    case SolveStatus::Infeasible: return "Infeasible";
  }
  return "unknown";
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return 0;
    case SolveStatus::Infeasible: return 2;
    case SolveStatus::MaxIters: return 3;
  }
  return 1;
}

ChoiState Solution::choi() const { return ChoiState::from_matrix(kappa_star, dims, 10.0 * tolerance); }

RealVector vectorize_hermitian(const Matrix& x) {
  const Index d = x.rows();
  RealVector v(d * d);
  const double root2 = std::sqrt(2.0);
  Index k = 0;
  for (Index i = 0; i < d; ++i) v(k++) = x(i, i).real();
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      v(k++) = root2 * x(i, j).real();
      v(k++) = root2 * x(i, j).imag();
    }
  }
  return v;
}

Matrix devectorize_hermitian(const RealVector& v, Index d) {
  if (v.size() != d * d) throw std::invalid_argument("devectorize_hermitian: length must be d^2");
  Matrix x(d, d);
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  Index k = 0;
  for (Index i = 0; i < d; ++i) x(i, i) = v(k++);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      const Complex entry(v(k) * inv_root2, v(k + 1) * inv_root2);
      k += 2;
      x(i, j) = entry;
      x(j, i) = std::conj(entry);
    }
  }
  return x;
}

AffineSystem build_affine_system(const TransportProblem& problem) {
  const Dims dims = problem.dims;
  const Index d = dims.total();
  const Index unknowns = d * d;
  const Index rows = dims.m * dims.m + static_cast<Index>(problem.constraints.size()) * dims.n * dims.n;

  AffineSystem sys{Eigen::MatrixXd(rows, unknowns), RealVector(rows)};
  // Column k is the image of the k-th orthonormal Hermitian basis element.
  for (Index k = 0; k < unknowns; ++k) {
    const Matrix basis = devectorize_hermitian(RealVector::Unit(unknowns, k), d);
    Index row = 0;
    const Matrix reduced = partial_trace(basis, dims, Subsystem::B);
    sys.matrix.col(k).segment(row, dims.m * dims.m) = vectorize_hermitian(reduced);
    row += dims.m * dims.m;
    for (const auto& pair : problem.constraints) {
      sys.matrix.col(k).segment(row, dims.n * dims.n) =
          vectorize_hermitian(apply_choi_map(basis, dims, pair.input));
      row += dims.n * dims.n;
    }
  }
  Index row = 0;
  sys.rhs.segment(row, dims.m * dims.m) =
      vectorize_hermitian(Matrix::Identity(dims.m, dims.m) / static_cast<double>(dims.m));
  row += dims.m * dims.m;
  for (const auto& pair : problem.constraints) {
    sys.rhs.segment(row, dims.n * dims.n) = vectorize_hermitian(pair.output);
    row += dims.n * dims.n;
  }
  return sys;
}

namespace {

constexpr double kFaceCutoff = 1e-12;

// Euclidean projection onto {x : A x = b}, or onto the least-squares set
// when b is out of range. Redundant rows are absorbed by the rank cut.
class AffineProjector {
 public:
  // Eigen 3.4.0's divide-and-conquer SVD returns wrong singular values on
  // some rank-deficient systems; Jacobi after a QR step is exact enough and
  // cheap, since only a rows x rows block is diagonalized.
  explicit AffineProjector(const AffineSystem& sys) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector& sv = svd.singularValues();
    const double cutoff = sv.size() > 0 ? sv(0) * 1e-10 * static_cast<double>(sys.matrix.cols()) : 0.0;
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    row_space_ = svd.matrixV().leftCols(rank);
    const RealVector coeffs = (svd.matrixU().leftCols(rank).transpose() * sys.rhs).cwiseQuotient(sv.head(rank));
    particular_ = row_space_ * coeffs;
  }

  RealVector project(const RealVector& v) const {
    return v - row_space_ * (row_space_.transpose() * v) + particular_;
  }

  const Eigen::MatrixXd& row_space() const { return row_space_; }  // orthonormal columns
  const RealVector& particular() const { return particular_; }     // minimum-norm solution

 private:
  Eigen::MatrixXd row_space_;
  RealVector particular_;
};

RealVector psd_project_vec(const RealVector& v, Index d) {
  return vectorize_hermitian(psd_project(devectorize_hermitian(v, d)));
}

// Every feasible kappa is supported on ker W for W = X^T (x) P, where X is a
// PSD combination sum_j c_j rho_j of the inputs and P projects onto the kernel
// of its prescribed image E(X) = sum_j c_j sigma_j: Tr(W kappa) = Tr(P E(X)) / m
// = 0 and both are PSD. Pure targets give such terms with X = rho_j. Isometric
// targets give them on the boundary of the cone of PSD combinations, where X
// and E(X) lose rank together. Either way kappa is pinned to a face of the
// cone with empty interior, which slows first-order methods to a crawl; the
// iteration runs in the coordinates of that face instead.
struct Face {
  Matrix basis;         // d x r, orthonormal columns spanning ker W
  Eigen::MatrixXd lift;  // d^2 x r^2, vec(K) -> vec(basis K basis^dagger), an isometry

  Index rank() const { return basis.cols(); }

  Matrix embed(const RealVector& reduced) const {
    return basis * devectorize_hermitian(reduced, rank()) * basis.adjoint();
  }
  RealVector restrict(const Matrix& kappa) const {
    return vectorize_hermitian(basis.adjoint() * kappa * basis);
  }
};

Face make_face(Matrix basis) {
  Face face;
  face.basis = std::move(basis);
  const Index d = face.basis.rows();
  const Index r = face.rank();
  face.lift.resize(d * d, r * r);
  for (Index k = 0; k < r * r; ++k)
    face.lift.col(k) = vectorize_hermitian(face.embed(RealVector::Unit(r * r, k)));
  return face;
}

// Adds X^T (x) P_ker(image) to w; input and image have unit trace.
void add_kernel_term(Matrix& w, const Matrix& input, const Matrix& image) {
  const auto eig = eig_hermitian(image);
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues(k) <= kFaceCutoff)
      w += kron(Matrix(input.transpose()), projector(eig.eigenvectors.col(k)));
  }
}

// Boundary points of {c : sum_j c_j rho_j >= 0, sum_j c_j = 1}, reached from the
// centroid along the edge directions and a fixed pseudo-random sample.
void add_boundary_terms(Matrix& w, const std::vector<ConstraintPair>& pairs) {
  const auto k = static_cast<Index>(pairs.size());
  if (k < 2) return;
  const Index m = pairs.front().input.rows();
  Matrix centre = Matrix::Zero(m, m);
  for (const auto& pair : pairs) centre += pair.input / static_cast<double>(k);
  // Every input vanishes on ker(centre), so the search runs on its range and
  // in coordinates where the centre is the identity.
  const auto eig = eig_hermitian(centre);
  Index low = 0;
  while (low < m && eig.eigenvalues(low) <= kFaceCutoff) ++low;
  const Matrix range = eig.eigenvectors.rightCols(m - low);
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues.tail(m - low).cwiseSqrt().cwiseInverse();

  std::vector<RealVector> directions;
  for (Index a = 0; a < k; ++a) {
    for (Index b = a + 1; b < k; ++b) {
      RealVector dir = RealVector::Zero(k);
      dir(a) = 1.0;
      dir(b) = -1.0;
      directions.push_back(dir);
      directions.push_back(-dir);
    }
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  for (Index extra = 0; extra < 4 * k; ++extra) {
    RealVector dir(k);
    for (Index j = 0; j < k; ++j) dir(j) = normal(rng);
    directions.push_back(dir.array() - dir.mean());
  }

  for (const RealVector& dir : directions) {
    Matrix step = Matrix::Zero(m, m);
    for (Index j = 0; j < k; ++j) step += dir(j) * pairs[static_cast<std::size_t>(j)].input;
    const Matrix whitened =
        inv_sqrt.asDiagonal() * (range.adjoint() * step * range) * inv_sqrt.asDiagonal();
    const double most_negative = -eig_hermitian(whitened).eigenvalues(0);
    if (!(most_negative > kFaceCutoff)) continue;
    const RealVector c = RealVector::Constant(k, 1.0 / static_cast<double>(k)) + dir / most_negative;
    Matrix input = Matrix::Zero(m, m);
    Matrix image = Matrix::Zero(pairs.front().output.rows(), pairs.front().output.cols());
    for (Index j = 0; j < k; ++j) {
      input += c(j) * pairs[static_cast<std::size_t>(j)].input;
      image += c(j) * pairs[static_cast<std::size_t>(j)].output;
    }
    add_kernel_term(w, input, image);
  }
}

Face constraint_face(const TransportProblem& problem) {
  const Dims dims = problem.dims;
  const Index d = dims.total();
  Matrix w = Matrix::Zero(d, d);
  for (const auto& pair : problem.constraints) add_kernel_term(w, pair.input, pair.output);
  add_boundary_terms(w, problem.constraints);
  const auto eig = eig_hermitian(w);
  Index r = 0;
  while (r < d && eig.eigenvalues(r) <= kFaceCutoff) ++r;
  return make_face(eig.eigenvectors.leftCols(r));
}

// Declares the iteration infeasible when the affine residual sits above
// sqrt(tol) without a 1% improvement for kStallWindow consecutive iterations.
class StallDetector {
 public:
  static constexpr int kStallWindow = 1000;

  explicit StallDetector(double tol) : threshold_(std::sqrt(tol)) {}

  bool update(double residual) {
    if (residual <= threshold_ || residual < 0.99 * best_) {
      best_ = std::min(best_, residual);
      count_ = 0;
      return false;
    }
    return ++count_ >= kStallWindow;
  }

 private:
  double threshold_;
  double best_ = std::numeric_limits<double>::infinity();
  int count_ = 0;
};

// Facial reduction beyond the structural terms above. A PSD W = A^T y with
// <b, y> = 0 has Tr(W kappa) = <b, y> = 0 on every feasible kappa, so kappa
// lives on ker W. Such W form the cone L n PSD, L = range(A^T) n x0^perp with
// x0 the minimum-norm solution. Alternating projections between L n {Tr W = 1}
// and the PSD cone locate a candidate, but crawl when that cone is thin.
// Fixing the candidate's rank and projecting again converges linearly when
// the rank is right, and only a W that lands on L to kExposeTol is used.
constexpr double kExposeTol = 1e-12;
constexpr double kExposeMinEigenvalue = 1e-6;  // for Tr W = 1
constexpr int kExposeIters = 2000;
constexpr int kExposeCandidates = 4;

RealVector rank_project_vec(const RealVector& v, Index d, Index rank) {
  const auto eig = eig_hermitian(devectorize_hermitian(v, d));
  Eigen::VectorXd kept = Eigen::VectorXd::Zero(d);
  kept.tail(rank) = eig.eigenvalues.tail(rank).cwiseMax(0.0);
  return vectorize_hermitian(eig.eigenvectors * kept.cast<Complex>().asDiagonal() *
                             eig.eigenvectors.adjoint());
}

// Alternates between `affine` and `cone` until the gap falls to kExposeTol or
// shrinks by less than 10% over 100 iterations. Leaves w on the cone side and
// returns the last gap.
template <typename Affine, typename Cone>
double alternate(RealVector& w, const Affine& affine, const Cone& cone) {
  double gap = std::numeric_limits<double>::infinity();
  double checkpoint = gap;
  for (int iter = 1; iter <= kExposeIters; ++iter) {
    RealVector on_cone = cone(w);
    w = affine(on_cone);
    gap = (on_cone - w).norm();
    const bool stalled = iter % 100 == 0 && gap > 0.9 * checkpoint;
    if (iter % 100 == 0) checkpoint = gap;
    if (gap <= kExposeTol || stalled || iter == kExposeIters) {
      w = std::move(on_cone);
      break;
    }
  }
  return gap;
}

// Orthonormal basis (face coordinates) of ker W for a certified exposing W.
std::optional<Matrix> exposed_kernel(const AffineSystem& sys, const AffineProjector& projector,
                                     Index r) {
  const Eigen::MatrixXd& rows = projector.row_space();
  const RealVector& x0 = projector.particular();
  const double x0_sq = x0.squaredNorm();
  if (x0_sq == 0.0 || (sys.matrix * x0 - sys.rhs).norm() > 1e-10 * std::max(1.0, sys.rhs.norm()))
    return std::nullopt;  // inconsistent equations; the iteration reports those

  const auto onto_l = [&](const RealVector& w) {
    RealVector out = rows * (rows.transpose() * w);
    out -= (x0.dot(w) / x0_sq) * x0;
    return out;
  };
  const RealVector identity = vectorize_hermitian(Matrix::Identity(r, r));
  const RealVector trace_dir = onto_l(identity);
  const double trace_sq = trace_dir.squaredNorm();
  if (trace_sq <= 1e-18 * static_cast<double>(r)) return std::nullopt;  // L is traceless
  const auto onto_affine = [&](const RealVector& w) {
    RealVector out = onto_l(w);
    out += ((1.0 - trace_dir.dot(out)) / trace_sq) * trace_dir;
    return out;
  };

  RealVector w = onto_affine(identity / static_cast<double>(r));
  alternate(w, onto_affine, [r](const RealVector& v) { return psd_project_vec(v, r); });
  const Eigen::VectorXd spectrum = eig_hermitian(devectorize_hermitian(w, r)).eigenvalues;
  const double top = spectrum(r - 1);
  if (!(top > 0.0)) return std::nullopt;

  int tried = 0;
  for (Index rank = r - 1; rank >= 1 && tried < kExposeCandidates; --rank) {
    if (spectrum(r - rank) < 1e-3 * top) continue;
    ++tried;
    RealVector candidate = w;
    const double gap = alternate(candidate, onto_affine, [r, rank](const RealVector& v) {
      return rank_project_vec(v, r, rank);
    });
    if (gap > kExposeTol) continue;
    const auto eig = eig_hermitian(devectorize_hermitian(candidate, r));
    if (eig.eigenvalues(r - rank) < kExposeMinEigenvalue) continue;
    return Matrix(eig.eigenvectors.leftCols(r - rank));
  }
  return std::nullopt;
}

// Repeats facial reduction inside `face` until no exposing W remains.
std::optional<Face> reduce_face(const Face& face, const AffineSystem& full) {
  std::optional<Face> out;
  const Face* current = &face;
  while (current->rank() > 0) {
    const AffineSystem sys{full.matrix * current->lift, full.rhs};
    const AffineProjector projector(sys);
    const auto kernel = exposed_kernel(sys, projector, current->rank());
    if (!kernel) break;
    out = make_face(current->basis * *kernel);
    current = &*out;
  }
  return out;
}

// Over-relaxed ADMM for min <c, z> over {A z = b} and the PSD cone in face
// coordinates. With c = 0 it is Douglas-Rachford feasibility, which unlike
// plain alternating projections keeps a usable rate on thin faces. run() can
// be called again with a larger limit to resume.
class Admm {
 public:
  Admm(const AffineSystem& sys, const AffineProjector& affine, RealVector c, RealVector z, Index r,
       const SolverOptions& opt)
      : sys_(sys), affine_(affine), c_(std::move(c)), z_(std::move(z)), best_z_(z_),
        u_(RealVector::Zero(z_.size())), r_(r), opt_(opt), rho_(opt.penalty), stall_(opt.tol) {}

  // Iterates until convergence, a stall, or `limit` iterations in total.
  SolveStatus run(int limit) {
    const double alpha = opt_.over_relaxation;
    const int adapt_until = opt_.max_iters / 2;
    while (iterations_ < limit) {
      const int iter = ++iterations_;
      const RealVector x = affine_.project(z_ - u_ - c_ / rho_);
      const RealVector x_relaxed = alpha * x + (1.0 - alpha) * z_;
      const RealVector z_prev = z_;
      z_ = psd_project_vec(x_relaxed + u_, r_);
      u_ += x_relaxed - z_;

      const double primal = (x - z_).norm();
      dual_ = rho_ * (z_ - z_prev).norm();
      const double affine_residual = (sys_.matrix * z_ - sys_.rhs).norm();

      const double score = std::max({primal, dual_, affine_residual});
      if (score < best_score_) {
        best_score_ = score;
        best_z_ = z_;
      }
      if (primal <= opt_.tol && dual_ <= opt_.tol && affine_residual <= opt_.tol) {
        best_z_ = z_;
        return SolveStatus::Converged;
      }
      if (stall_.update(affine_residual)) {
        best_z_ = z_;
        return SolveStatus::Infeasible;
      }
      // residual balancing; the scaled dual variable follows the step change
      if (iter % 20 == 0 && iter < adapt_until) {
        if (primal > 10.0 * dual_) {
          rho_ *= 2.0;
          u_ /= 2.0;
        } else if (dual_ > 10.0 * primal) {
          rho_ /= 2.0;
          u_ *= 2.0;
        }
      }
    }
    return SolveStatus::MaxIters;
  }

  const RealVector& best() const { return best_z_; }
  int iterations() const { return iterations_; }
  double dual_residual() const { return dual_; }

 private:
  const AffineSystem& sys_;
  const AffineProjector& affine_;
  RealVector c_;
  RealVector z_;
  RealVector best_z_;
  RealVector u_;
  Index r_;
  const SolverOptions& opt_;
  double rho_;
  StallDetector stall_;
  int iterations_ = 0;
  double dual_ = 0.0;
  double best_score_ = std::numeric_limits<double>::infinity();
};

// Iterations on the structural face before a harder face is looked for.
constexpr int kReductionProbe = 2000;

struct FaceRun {
  Matrix kappa;
  SolveStatus status = SolveStatus::MaxIters;
  int iterations = 0;
  double dual_residual = 0.0;
};

// Objective in face coordinates. Tr(kappa) = 1 on the feasible set, so
// shifting C by a multiple of I only shifts the objective; it is also
// rescaled to a unit spectral spread.
RealVector face_objective(const Face& face, const Matrix* cost) {
  const Index r = face.rank();
  if (cost == nullptr) return RealVector::Zero(r * r);
  const Matrix reduced = face.basis.adjoint() * *cost * face.basis;
  const auto spectrum = eig_hermitian(reduced).eigenvalues;
  const double spread = spectrum(r - 1) - spectrum(0);
  const double scale = spread > 1e-300 ? spread : 1.0;
  return vectorize_hermitian((reduced - spectrum(0) * Matrix::Identity(r, r)) / scale);
}

// ADMM on the structural face. If that has not converged after
// kReductionProbe iterations, a smaller face is searched for once and the
// iteration restarts there; otherwise it resumes where it stopped.
FaceRun run_on_faces(const TransportProblem& problem, const AffineSystem& full, const Matrix* cost,
                     const std::optional<Matrix>& start) {
  const SolverOptions& opt = problem.options;
  const Index d = problem.dims.total();
  Face face = constraint_face(problem);
  FaceRun out;
  bool searched = false;
  for (;;) {
    const Index r = face.rank();
    if (r == 0) {
      // only kappa = 0 is compatible with the constraints
      out.kappa = Matrix::Zero(d, d);
      out.status = SolveStatus::Infeasible;
      return out;
    }
    const AffineSystem sys{full.matrix * face.lift, full.rhs};
    const AffineProjector affine(sys);
    RealVector z = start ? face.restrict(*start)
                         : vectorize_hermitian(Matrix::Identity(r, r) / static_cast<double>(r));
    Admm admm(sys, affine, face_objective(face, cost), std::move(z), r, opt);
    const int budget = opt.max_iters - out.iterations;
    SolveStatus status = admm.run(searched ? budget : std::min(budget, kReductionProbe));
    if (status != SolveStatus::Converged && !searched) {
      searched = true;
      if (auto smaller = reduce_face(face, full)) {
        out.iterations += admm.iterations();
        face = std::move(*smaller);
        continue;
      }
      if (status == SolveStatus::MaxIters) status = admm.run(budget);
    }
    out.kappa = face.embed(admm.best());
    out.status = status;
    out.iterations += admm.iterations();
    out.dual_residual = admm.dual_residual();
    return out;
  }
}

}  // namespace

Solution solve(const TransportProblem& problem, const std::optional<Matrix>& warm_start) {
  problem.validate();
  if (warm_start) {
    detail::require_bipartite(*warm_start, problem.dims, "solve warm start");
    require_hermitian(*warm_start, "solve warm start", 1e-9);
  }
  const AffineSystem full = build_affine_system(problem);
  const FaceRun run = run_on_faces(problem, full, &problem.cost.matrix, warm_start);

  Solution sol;
  sol.dims = problem.dims;
  sol.tolerance = problem.options.tol;
  sol.kappa_star = run.kappa;
  sol.status = run.status;
  sol.iterations = run.iterations;
  sol.dual_residual = run.dual_residual;

  const VerificationReport report = verify_solution(problem, sol.kappa_star);
  sol.cost_value = report.cost;
  sol.reduction_residual = report.reduction_residual;
  sol.constraint_residuals = report.constraint_residuals;
  sol.primal_residual = (full.matrix * vectorize_hermitian(sol.kappa_star) - full.rhs).norm();
  return sol;
}

ChoiState feasible_sample(const TransportProblem& problem, unsigned long long seed) {
  problem.validate();
  const Index d = problem.dims.total();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Matrix start = g * g.adjoint();
  start /= start.trace().real();

  const AffineSystem full = build_affine_system(problem);
  const FaceRun run = run_on_faces(problem, full, nullptr, start);
  switch (run.status) {
    case SolveStatus::Converged:
      return ChoiState::from_matrix(run.kappa, problem.dims, 10.0 * problem.options.tol);
    case SolveStatus::Infeasible:
      throw SolveFailure(SolveStatus::Infeasible, "feasible_sample: constraints admit no state");
    case SolveStatus::MaxIters:
      break;
  }
  throw SolveFailure(SolveStatus::MaxIters, "feasible_sample: iteration budget exhausted");
}

double VerificationReport::max_residual() const {
  double worst = std::max({reduction_residual, trace_error, std::max(0.0, -min_eigenvalue)});
  for (double r : constraint_residuals) worst = std::max(worst, r);
  return worst;
}

VerificationReport verify_solution(const TransportProblem& problem, const Matrix& kappa) {
  detail::require_bipartite(kappa, problem.dims, "verify_solution");
  VerificationReport report;
  report.cost = frobenius_inner(problem.cost.matrix, kappa);
  report.reduction_residual = reduction_residual(kappa, problem.dims);
  for (const auto& pair : problem.constraints)
    report.constraint_residuals.push_back(
        (apply_choi_map(kappa, problem.dims, pair.input) - pair.output).norm());
  report.min_eigenvalue = eig_hermitian(kappa).eigenvalues(0);
  report.trace_error = std::abs(kappa.trace().real() - 1.0);
  return report;
}

VerificationReport verify_solution(const TransportProblem& problem, const Solution& solution) {
  return verify_solution(problem, solution.kappa_star);
}

}  // namespace optchan
