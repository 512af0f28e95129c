#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "zest/errors.hpp"

namespace zest::linalg {

using Complex = std::complex<double>;

/// Dense complex matrix, the carrier type for every operator in the library
/// (Kraus operators, Choi matrices, projectors, SDP witnesses).
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

/// |i><j| on a d-dimensional space.
ComplexMatrix matrix_unit(int d, int i, int j);

/// Unnormalized maximally entangled vector sum_i |i>|i> as a d^2 column.
ComplexMatrix phi_vector(int d);

/// |Phi><Phi| with the unnormalized |Phi> above; trace d.
ComplexMatrix phi_projector(int d);

/// Largest |entry|; zero for empty matrices.
double max_abs(const ComplexMatrix& m);

/// Hermiticity test with relative tolerance 1e-12 * (1 + max |entry|).
bool hermitian(const ComplexMatrix& m);

/// (m + m^dag) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Kronecker product; composite index (i_a, i_b) -> i_a * dim_b + i_b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Partial trace of a (dimA*dimB)-square matrix over the named factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b,
                            Subsystem over);

struct HermitianEig {
  RealVector eigenvalues;   // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

/// Eigendecomposition of a Hermitian matrix, m = V diag(lambda) V^dag.
/// Throws DimensionMismatch on non-square and Error on non-Hermitian input.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Hilbert-Schmidt inner product tr(a^dag b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// Frobenius norm sqrt(tr(m^dag m)).
double hs_norm(const ComplexMatrix& m);

/// Minimum eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& m);

/// Real isometric coordinates of a Hermitian n x n matrix: n diagonal
/// entries, then sqrt(2)*Re and sqrt(2)*Im of the strict upper triangle.
/// hvec(A) . hvec(B) = tr(A B) for Hermitian A, B.
RealVector hvec(const ComplexMatrix& m);
ComplexMatrix hvec_inverse(const RealVector& v, int n);

/// Orthonormal Hermitian basis of the n x n operators (n^2 elements, hvec
/// coordinate order).
std::vector<ComplexMatrix> hermitian_onb(int n);

}  // namespace zest::linalg
