// Dense complex linear algebra kernel.
//
// Everything downstream (state sets, non-disturbing spaces, protocol
// synthesis, UPB case analysis) is built on four primitives:
//
//   kron          : tensor product A ⊗ B
//   eig_hermitian : spectral decomposition with eigenvalue grouping,
//                   returning eigenprojectors instead of eigenvector bases
//   column_space  : isometry onto range(M), rank decided by SVD threshold
//   is_psd        : min eigenvalue >= -tol * ||M||_max
//
// Matrices are dense Eigen matrices, dimension capped at kMaxDim.  All
// operations are deterministic: identical input bits give identical output
// bits (Eigen's self-adjoint solver and Jacobi SVD do not randomize).

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "locc/errors.hpp"

namespace locc {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr int kMaxDim = 64;

namespace tol {
// Hermiticity: absolute on unit-normalized input (scaled by ||M||_max above 1).
inline constexpr double kHermiticity = 1e-10;
// Eigenvalue grouping: multiplied by the spectral radius.
inline constexpr double kEigGrouping = 1e-9;
// Rank / zero threshold: multiplied by the largest singular value.
inline constexpr double kRank = 1e-9;
// Isometry defect ||Q'Q - I||_max accepted at construction.
inline constexpr double kIsometry = 1e-8;
// Pairwise state overlap tr(rho_i rho_j) accepted as orthogonal.
inline constexpr double kOrthogonal = 1e-9;
// Generic verification tolerance used by the checkers.
inline constexpr double kCheck = 1e-8;
}  // namespace tol

// Largest |entry|; zero for empty matrices.
double max_abs(const Mat& m);

bool all_finite(const Mat& m);

Mat identity(int d);

// Hermitian operator, stored exactly symmetrized: M := (M + M')/2.
// Construction rejects matrices whose anti-Hermitian part exceeds the
// hermiticity tolerance, non-square or non-finite input, and dim > kMaxDim.
class HermitianOperator {
 public:
  explicit HermitianOperator(Mat m, double herm_tol = tol::kHermiticity);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Mat& matrix() const { return mat_; }
  double trace() const { return mat_.trace().real(); }

 private:
  Mat mat_;
};

// d x h matrix Q with Q'Q = I_h; h = 0 encodes the zero subspace.
class Isometry {
 public:
  explicit Isometry(Mat q, double iso_tol = tol::kIsometry);

  int ambient_dim() const { return static_cast<int>(mat_.rows()); }
  int sub_dim() const { return static_cast<int>(mat_.cols()); }
  const Mat& matrix() const { return mat_; }
  Mat projector() const { return mat_ * mat_.adjoint(); }

 private:
  Mat mat_;
};

struct EigenGroup {
  double eigenvalue;
  Mat projector;  // orthogonal projector onto the grouped eigenspace
  int multiplicity;
};

// Grouped spectral decomposition.  Eigenvalues ascend strictly across groups
// (pairwise gaps above the grouping tolerance); projectors are mutually
// orthogonal, idempotent, and sum to the identity.
struct Spectrum {
  std::vector<EigenGroup> groups;
  double grouping_tol;  // the absolute tolerance that was applied

  Mat reconstruct(int dim) const;
};

// Kronecker product, index convention (A ⊗ B)[i*rowsB+k, j*colsB+l] = A(i,j)B(k,l).
Mat kron(const Mat& a, const Mat& b);

// Spectral decomposition of M with eigenvalues clustered at
// kEigGrouping x spectral radius.  Nearby eigenvalues share one group and one
// projector, so callers never depend on a basis choice inside a degenerate
// eigenspace.
Spectrum eig_hermitian(const HermitianOperator& m);

// Isometry onto range(M); columns with singular value <= tol * sigma_max are
// dropped.  The zero matrix yields sub_dim = 0.
Isometry column_space(const Mat& m, double tol = tol::kRank);

// True iff min eigenvalue >= -tol * ||M||_max.
bool is_psd(const HermitianOperator& m, double tol = 1e-9);

// Smallest eigenvalue (0 for 0x0).
double min_eigenvalue(const HermitianOperator& m);

}  // namespace locc
