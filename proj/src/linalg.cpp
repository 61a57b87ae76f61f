#include "locc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace locc {

double max_abs(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool all_finite(const Mat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

Mat identity(int d) { return Mat::Identity(d, d); }

HermitianOperator::HermitianOperator(Mat m, double herm_tol) {
  if (m.rows() != m.cols())
    throw DimensionError("HermitianOperator: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  if (m.rows() > kMaxDim)
    throw DimensionError("HermitianOperator: dim " + std::to_string(m.rows()) + " exceeds cap " +
                         std::to_string(kMaxDim));
  if (!all_finite(m)) throw ValidationError("HermitianOperator: non-finite entries");
  const double scale = std::max(1.0, max_abs(m));
  const double defect = max_abs(m - m.adjoint());
  if (defect > herm_tol * scale)
    throw ValidationError("HermitianOperator: anti-Hermitian defect " + std::to_string(defect));
  mat_ = 0.5 * (m + m.adjoint().eval());
}

Isometry::Isometry(Mat q, double iso_tol) {
  if (q.rows() > kMaxDim) throw DimensionError("Isometry: dim exceeds cap");
  if (q.cols() > q.rows()) throw DimensionError("Isometry: sub_dim exceeds ambient_dim");
  if (!all_finite(q)) throw ValidationError("Isometry: non-finite entries");
  if (q.cols() > 0) {
    const Mat gram = q.adjoint() * q;
    const double defect = max_abs(gram - Mat::Identity(q.cols(), q.cols()));
    if (defect > iso_tol)
      throw ValidationError("Isometry: Q'Q defect " + std::to_string(defect));
  }
  mat_ = std::move(q);
}

Mat Spectrum::reconstruct(int dim) const {
  Mat m = Mat::Zero(dim, dim);
  for (const auto& g : groups) m += g.eigenvalue * g.projector;
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > kMaxDim && a.rows() == a.cols() && b.rows() == b.cols())
    throw DimensionError("kron: result dim exceeds cap");
  Mat out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Spectrum eig_hermitian(const HermitianOperator& m) {
  const int d = m.dim();
  Eigen::SelfAdjointEigenSolver<Mat> solver(m.matrix());
  if (solver.info() != Eigen::Success)
    throw ValidationError("eig_hermitian: eigensolver did not converge");

  const Eigen::VectorXd evals = solver.eigenvalues();  // ascending
  const Mat evecs = solver.eigenvectors();
  const double radius = (d > 0) ? evals.cwiseAbs().maxCoeff() : 0.0;
  const double group_tol = tol::kEigGrouping * radius;

  Spectrum spec;
  spec.grouping_tol = group_tol;
  int start = 0;
  while (start < d) {
    int end = start + 1;
    while (end < d && evals[end] - evals[end - 1] <= group_tol) ++end;
    const int mult = end - start;
    const Mat basis = evecs.middleCols(start, mult);
    spec.groups.push_back(EigenGroup{
        evals.segment(start, mult).mean(),
        basis * basis.adjoint(),
        mult,
    });
    start = end;
  }
  return spec;
}

Isometry column_space(const Mat& m, double tol) {
  if (m.size() == 0 || max_abs(m) == 0.0)
    return Isometry(Mat::Zero(m.rows(), 0));
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * sv[0];
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  return Isometry(svd.matrixU().leftCols(rank));
}

bool is_psd(const HermitianOperator& m, double tol) {
  if (m.dim() == 0) return true;
  return min_eigenvalue(m) >= -tol * max_abs(m.matrix());
}

double min_eigenvalue(const HermitianOperator& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> solver(m.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()[0];
}

}  // namespace locc
