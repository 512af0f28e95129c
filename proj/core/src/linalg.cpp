#include "zest/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace zest::linalg {

ComplexMatrix matrix_unit(int d, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix phi_vector(int d) {
  ComplexMatrix v = ComplexMatrix::Zero(d * d, 1);
  for (int i = 0; i < d; ++i) v(i * d + i, 0) = 1.0;
  return v;
}

ComplexMatrix phi_projector(int d) {
  const ComplexMatrix v = phi_vector(d);
  return v * v.adjoint();
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool hermitian(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const double tol = 1e-12 * (1.0 + max_abs(m));
  return max_abs(m - m.adjoint()) <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b,
                            Subsystem over) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw DimensionMismatch("partial_trace: matrix side must be dim_a*dim_b");
  }
  if (over == Subsystem::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j)
        for (int k = 0; k < dim_b; ++k)
          out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j)
      for (int k = 0; k < dim_a; ++k)
        out(i, j) += m(k * dim_b + i, k * dim_b + j);
  return out;
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("hermitian_eig: square matrix required");
  if (!hermitian(m)) throw Error("hermitian_eig: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  if (es.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed to converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("hs_inner: shapes must match");
  return (a.adjoint() * b).trace();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double hs_norm(const ComplexMatrix& m) { return m.norm(); }

double min_eigenvalue(const ComplexMatrix& m) {
  return hermitian_eig(m).eigenvalues(0);
}

RealVector hvec(const ComplexMatrix& m) {
  const int n = static_cast<int>(m.rows());
  RealVector v(n * n);
  int k = 0;
  for (int i = 0; i < n; ++i) v(k++) = m(i, i).real();
  const double s = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v(k++) = s * m(i, j).real();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v(k++) = s * m(i, j).imag();
  return v;
}

ComplexMatrix hvec_inverse(const RealVector& v, int n) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) m(i, i) = v(k++);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) += s * v(k);
      m(j, i) += s * v(k);
      ++k;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) += Complex(0, s * v(k));
      m(j, i) += Complex(0, -s * v(k));
      ++k;
    }
  return m;
}

std::vector<ComplexMatrix> hermitian_onb(int n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  for (int i = 0; i < n; ++i) basis.push_back(matrix_unit(n, i, i));
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      basis.push_back(s * (matrix_unit(n, i, j) + matrix_unit(n, j, i)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      basis.push_back(Complex(0, s) *
                      (matrix_unit(n, i, j) - matrix_unit(n, j, i)));
  return basis;
}

}  // namespace zest::linalg
