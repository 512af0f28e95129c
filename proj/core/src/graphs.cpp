#include "zest/graphs.hpp"

#include <Eigen/SVD>
#include <utility>

namespace zest::graphs {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::RealVector;

namespace {

// Vectorize column-wise into C^(rows*cols).
Eigen::VectorXcd cvec(const ComplexMatrix& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

ComplexMatrix from_cvec(const Eigen::VectorXcd& v, int rows, int cols) {
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

}  // namespace

OperatorSubspace span_of(const std::vector<ComplexMatrix>& ops,
                         std::string label) {
  if (ops.empty()) throw AllZeroInput("span_of: no operators given");
  const auto rows = ops.front().rows();
  const auto cols = ops.front().cols();
  for (const auto& op : ops)
    if (op.rows() != rows || op.cols() != cols)
      throw DimensionMismatch("span_of: operators differ in shape");

  // Stack vectorized operators as columns and orthonormalize them globally
  // with an SVD so that rank decisions see the whole family at once.
  Eigen::MatrixXcd stack(rows * cols, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t k = 0; k < ops.size(); ++k) stack.col(k) = cvec(ops[k]);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? 1e-10 * sv(0) : 0.0;
  int rank = 0;
  for (Eigen::Index t = 0; t < sv.size(); ++t)
    if (sv(t) > cutoff && sv(t) > 0.0) ++rank;
  if (rank == 0) throw AllZeroInput("span_of: all operators numerically zero");

  OperatorSubspace s;
  s.op_rows = static_cast<int>(rows);
  s.op_cols = static_cast<int>(cols);
  s.label = std::move(label);
  s.basis.reserve(rank);
  for (int t = 0; t < rank; ++t)
    s.basis.push_back(from_cvec(svd.matrixU().col(t), s.op_rows, s.op_cols));
  return s;
}

OperatorSubspace ncgraph(const QuantumChannel& ch) {
  std::vector<ComplexMatrix> prods;
  prods.reserve(ch.kraus.size() * ch.kraus.size());
  for (const auto& ej : ch.kraus)
    for (const auto& ek : ch.kraus) prods.push_back(ej.adjoint() * ek);
  return span_of(prods, "S(" + ch.label + ")");
}

OperatorSubspace ncbigraph(const QuantumChannel& ch) {
  return span_of(ch.kraus, "K(" + ch.label + ")");
}

OperatorSubspace complement(const OperatorSubspace& s) {
  const int n = s.ambient_dimension();
  // Columns of U beyond the span's rank form an orthonormal basis of the
  // complement; a full SVD of the stacked basis provides them.
  Eigen::MatrixXcd stack(n, s.dimension());
  for (int k = 0; k < s.dimension(); ++k) stack.col(k) = cvec(s.basis[k]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack, Eigen::ComputeFullU);
  OperatorSubspace out;
  out.op_rows = s.op_rows;
  out.op_cols = s.op_cols;
  out.label = s.label.empty() ? std::string("complement")
                              : s.label + "^perp";
  for (int t = s.dimension(); t < n; ++t)
    out.basis.push_back(from_cvec(svd.matrixU().col(t), s.op_rows, s.op_cols));
  return out;
}

ComplexMatrix project(const OperatorSubspace& s, const ComplexMatrix& m) {
  if (m.rows() != s.op_rows || m.cols() != s.op_cols)
    throw DimensionMismatch("project: operator shape mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(s.op_rows, s.op_cols);
  for (const auto& b : s.basis) out += linalg::hs_inner(b, m) * b;
  return out;
}

bool contains(const OperatorSubspace& s, const ComplexMatrix& m) {
  const double resid = linalg::hs_norm(m - project(s, m));
  return resid <= 1e-9 * (1.0 + linalg::hs_norm(m));
}

bool same_subspace(const OperatorSubspace& a, const OperatorSubspace& b) {
  if (a.op_rows != b.op_rows || a.op_cols != b.op_cols) return false;
  if (a.dimension() != b.dimension()) return false;
  const int n = a.ambient_dimension();
  Eigen::MatrixXcd pa = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd pb = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& m : a.basis) {
    const auto v = cvec(m);
    pa += v * v.adjoint();
  }
  for (const auto& m : b.basis) {
    const auto v = cvec(m);
    pb += v * v.adjoint();
  }
  return (pa - pb).cwiseAbs().maxCoeff() <= 1e-9;
}

bool adjoint_closed(const OperatorSubspace& s) {
  if (s.op_rows != s.op_cols) return false;
  for (const auto& b : s.basis)
    if (!contains(s, b.adjoint())) return false;
  return true;
}

std::vector<ComplexMatrix> hermitian_basis(const OperatorSubspace& s) {
  if (!adjoint_closed(s))
    throw SubspaceNotValid("hermitian_basis: subspace not adjoint-closed");
  if (s.basis.empty()) return {};
  const int n = s.op_rows;
  // Hermitian and anti-Hermitian parts of the complex basis span the real
  // space of Hermitian elements; orthonormalize their hvec coordinates.
  std::vector<RealVector> cand;
  cand.reserve(2 * s.basis.size());
  for (const auto& b : s.basis) {
    cand.push_back(linalg::hvec(linalg::hermitian_part(b)));
    cand.push_back(linalg::hvec(linalg::hermitian_part(Complex(0, 1) * b)));
  }
  Eigen::MatrixXd stack(n * n, static_cast<Eigen::Index>(cand.size()));
  for (std::size_t k = 0; k < cand.size(); ++k) stack.col(k) = cand[k];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? 1e-10 * sv(0) : 0.0;
  std::vector<ComplexMatrix> out;
  for (Eigen::Index t = 0; t < sv.size(); ++t)
    if (sv(t) > cutoff && sv(t) > 0.0)
      out.push_back(linalg::hvec_inverse(svd.matrixU().col(t), n));
  return out;
}

OperatorSubspace tensor_with_full(const OperatorSubspace& s, int aux_dim) {
  OperatorSubspace out;
  out.op_rows = s.op_rows * aux_dim;
  out.op_cols = s.op_cols * aux_dim;
  out.label = s.label + "(x)L";
  const auto aux = linalg::hermitian_onb(aux_dim);
  out.basis.reserve(s.basis.size() * aux.size());
  for (const auto& b : s.basis)
    for (const auto& e : aux) out.basis.push_back(linalg::kron(b, e));
  return out;
}

}  // namespace zest::graphs
