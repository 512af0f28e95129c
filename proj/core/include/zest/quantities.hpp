#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "zest/channels.hpp"
#include "zest/graphs.hpp"
#include "zest/sdp.hpp"

namespace zest::quantities {

using channels::QuantumChannel;
using graphs::OperatorSubspace;
using linalg::ComplexMatrix;
using linalg::RealMatrix;

enum class Quantity { Theta, Upsilon, Sigma, Aram, FractionalPacking };

const char* to_string(Quantity q);

struct SolverConfig {
  double tol = 1e-8;
  int max_iters = 200;
  // Invoked with every conic program before it is solved (debug dumps).
  std::function<void(const sdp::ConicProblem&)> on_problem;
};

/// A named scalar together with the solve that produced it and the witness
/// operators recovered from the solution. `value` is NaN and witnesses are
/// empty when the underlying solve did not reach Optimal (inspect `report`).
struct QuantityResult {
  Quantity name;
  double value = 0.0;
  double log2_value = 0.0;
  sdp::SolveReport report;
  // Second, independently encoded program when the quantity is computed
  // from a primal/dual pair of SDPs (theta, aram).
  std::optional<sdp::SolveReport> cross_report;
  std::map<std::string, ComplexMatrix> witness;

  bool optimal() const { return report.status == sdp::SolveStatus::Optimal; }
};

/// Lovasz-number-style SDP value of an operator subspace containing the
/// identity and closed under adjoints. Solves both the entangled-state
/// primal (variables rho, T) and the covering dual (variable Y, epigraph
/// scalar t) as separately encoded programs and checks they agree to 1e-6
/// relative. Witnesses: "rho", "T", "Y".
QuantityResult theta(const OperatorSubspace& s, const SolverConfig& cfg = {});

/// One-shot no-signalling-assisted zero-error capability (number of
/// messages) of a channel. Witnesses: "R_A", "U_AB".
QuantityResult upsilon(const QuantumChannel& ch, const SolverConfig& cfg = {});

/// One-shot no-signalling-assisted zero-error simulation cost
/// (2^{-Hmin(A|B)} of the Choi matrix); log2_value is the cost in bits.
/// Witness: "T_B".
QuantityResult sigma(const QuantumChannel& ch, const SolverConfig& cfg = {});

/// Quantum fractional packing number of the channel's bipartite graph:
/// both programs of the packing/covering SDP pair are solved and must
/// agree within 1e-6 relative. Witnesses: "R_A", "T_B".
QuantityResult aram(const QuantumChannel& ch, const SolverConfig& cfg = {});

/// Fractional packing number of the bipartite graph induced by a
/// column-stochastic matrix: max sum v_x subject to
/// sum_{x : p(y|x) > 0} v_x <= 1 for every output y and 0 <= v_x <= 1.
/// Witness: "v_x" (column vector).
QuantityResult fractional_packing(const RealMatrix& p,
                                  const SolverConfig& cfg = {});

struct ClosedFormNalpha {
  double theta;
  double upsilon;
  double sigma;
  double aram;
};

/// Closed forms for the qutrit family at angle alpha:
/// (2 + cos^2 + cos^-2, 4, 4, 2 + cos^2 + cos^-2).
ClosedFormNalpha closed_form_nalpha(double alpha);

struct SeparationReport {
  double log2_theta;
  double log2_upsilon;
  double gap;
};

/// Computes log2(theta) - log2(upsilon) for the family channel by SDP and
/// checks the gap is strictly positive.
SeparationReport separation_report(double alpha, const SolverConfig& cfg = {});

}  // namespace zest::quantities
