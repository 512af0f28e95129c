#pragma once

#include <string>
#include <vector>

#include "zest/channels.hpp"
#include "zest/linalg.hpp"

namespace zest::graphs {

using channels::QuantumChannel;
using linalg::ComplexMatrix;

/// Subspace of op_rows x op_cols operators with an orthonormal basis under
/// the Hilbert-Schmidt inner product. Square subspaces model
/// non-commutative graphs S = span{E_j^dag E_k}; rectangular ones model
/// non-commutative bipartite graphs K = span{E_k}.
struct OperatorSubspace {
  int op_rows = 0;
  int op_cols = 0;
  std::vector<ComplexMatrix> basis;
  std::string label;

  int dimension() const { return static_cast<int>(basis.size()); }
  int ambient_dimension() const { return op_rows * op_cols; }
};

/// Orthonormalizes the span of the given operators (SVD, singular-value
/// cutoff 1e-10 relative). Throws AllZeroInput if the span is {0}.
OperatorSubspace span_of(const std::vector<ComplexMatrix>& ops,
                         std::string label = {});

/// Non-commutative graph S = span{E_j^dag E_k} of a channel.
OperatorSubspace ncgraph(const QuantumChannel& ch);

/// Non-commutative bipartite graph K = span{E_k} of a channel.
OperatorSubspace ncbigraph(const QuantumChannel& ch);

/// Orthocomplement under the HS inner product; dim S + dim S^perp equals
/// the ambient dimension. The result may have an empty basis.
OperatorSubspace complement(const OperatorSubspace& s);

/// Orthogonal projection of m onto the subspace.
ComplexMatrix project(const OperatorSubspace& s, const ComplexMatrix& m);

/// True iff ||m - proj_S(m)||_HS <= 1e-9 * (1 + ||m||_HS).
bool contains(const OperatorSubspace& s, const ComplexMatrix& m);

/// True iff the subspaces have equal projectors within 1e-9 (basis-free
/// equality test).
bool same_subspace(const OperatorSubspace& a, const OperatorSubspace& b);

/// True iff s is closed under the adjoint map.
bool adjoint_closed(const OperatorSubspace& s);

/// Orthonormal basis (real coefficients) of the Hermitian elements of an
/// adjoint-closed square subspace; its size equals dim(s). Throws
/// SubspaceNotValid if s is not adjoint-closed.
std::vector<ComplexMatrix> hermitian_basis(const OperatorSubspace& s);

/// The subspace s (x) L(C^aux_dim) of operators on the composite space,
/// spanned by b_i (x) E_j.
OperatorSubspace tensor_with_full(const OperatorSubspace& s, int aux_dim);

}  // namespace zest::graphs
