#pragma once

#include <string>
#include <vector>

#include "zest/linalg.hpp"

namespace zest::channels {

using linalg::ComplexMatrix;
using linalg::RealMatrix;

/// Completely positive trace-preserving map in Kraus form. Operators map
/// a dim_in space into a dim_out space; sum_k E_k^dag E_k = 1 within 1e-10.
struct QuantumChannel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<ComplexMatrix> kraus;
  std::string label;
  double completeness_residual = 0.0;
};

/// Choi matrix J = sum_ij |i><j| (x) N(|i><j|) (unnormalized |Phi>), the
/// orthogonal projector P onto its support, and the support rank.
struct ChoiData {
  ComplexMatrix J;
  ComplexMatrix P;
  int rank = 0;
};

/// Validates dimensions and the completeness relation.
QuantumChannel make_channel(std::vector<ComplexMatrix> kraus,
                            std::string label);

/// The qutrit amplitude-damping-like family with Kraus operators
///   E = sin(alpha)|0><1| + |1><2|,   D = cos(alpha)|2><1| + |1><0|,
/// defined for 0 < alpha <= pi/4.
QuantumChannel family_nalpha(double alpha);

/// Choi matrix and support projector (eigenvalue cutoff 1e-9 relative).
ChoiData choi(const QuantumChannel& ch);

/// Classical channel from a column-stochastic matrix p (|Y| rows, |X| cols):
/// Kraus operators sqrt(p(y|x)) |y><x| over the positive entries.
QuantumChannel classical_channel(const RealMatrix& p, std::string label = {});

/// Tensor product channel with Kraus operators E_i (x) F_j.
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);

/// Stochastic matrix of the pentagon channel: p(y|x) = 1/2 for
/// y in {x, x+1 mod 5}.
RealMatrix pentagon_matrix();

}  // namespace zest::channels
