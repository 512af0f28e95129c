#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zest/linalg.hpp"

namespace zest::sdp {

using linalg::ComplexMatrix;
using linalg::RealVector;

enum class BlockType {
  PSD,            // Hermitian positive semidefinite matrix of side n
  Nonneg,         // componentwise nonnegative vector of length n
  FreeHermitian,  // unconstrained Hermitian matrix of side n
};

struct BlockSpec {
  BlockType type;
  int size;
};

/// One equality constraint sum_k <A_k, X_k> = rhs. Coefficients for matrix
/// blocks are Hermitian matrices; for Nonneg blocks they are n x 1 real
/// vectors. Blocks without a coefficient entry contribute nothing.
struct Constraint {
  struct Coefficient {
    int block;
    ComplexMatrix a;
  };
  std::vector<Coefficient> coefficients;
  double rhs = 0.0;
};

/// Standard-form conic program, always in minimize sense:
///   min sum_k <C_k, X_k>   s.t.  <A_i, X> = b_i,  cone blocks in their cones.
/// Inequalities are encoded by the caller with explicit slack blocks.
struct ConicProblem {
  std::vector<BlockSpec> blocks;
  std::vector<ComplexMatrix> objective;  // aligned with blocks; empty = zero
  std::vector<Constraint> constraints;
  std::string label;

  int add_block(BlockType type, int size);
  void set_objective(int block, ComplexMatrix c);
  void add_constraint(Constraint c);
};

enum class SolveStatus {
  Optimal,
  Infeasible,
  Unbounded,
  MaxIterations,
  NumericalTrouble,
};

const char* to_string(SolveStatus s);

struct SolveOptions {
  double tol = 1e-8;
  int max_iters = 200;
  // Forces the complex-to-real embedding even for blocks whose data is
  // purely real (used by the embedding soundness tests).
  bool force_complex_embedding = false;
};

struct IterationStat {
  double primal_objective;
  double dual_objective;
  double primal_residual;
  double dual_residual;
  double mu;
};

struct SolveReport {
  SolveStatus status = SolveStatus::NumericalTrouble;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;
  // Block-wise primal solution (Nonneg blocks as n x 1 vectors).
  std::vector<ComplexMatrix> primal_solution;
  // Dual solution: equality multipliers y and block-wise dual slacks
  // (zero matrices for FreeHermitian blocks).
  RealVector dual_multipliers;
  std::vector<ComplexMatrix> dual_slacks;
  std::vector<IterationStat> trace;
};

/// Primal-dual interior-point solve (Nesterov-Todd scaling, Mehrotra
/// predictor-corrector). Deterministic for identical inputs and options.
/// Failures are communicated through SolveReport::status, never by
/// abnormal termination; ill-formed problems throw before iterating.
SolveReport solve(const ConicProblem& p, const SolveOptions& opts = {});

/// Solver-independent re-check of a reported solution. All residuals are
/// recomputed from the problem data with plain linear algebra.
struct CertificateReport {
  double max_violation = 0.0;  // feasibility + dual residuals + cone defects
  double gap = 0.0;            // |primal - dual| objective, 0 if no dual
  bool dual_checked = false;
  std::vector<double> primal_min_eigenvalues;  // per cone block
  std::vector<double> dual_min_eigenvalues;    // per cone block, if dual
};

CertificateReport verify_certificate(const ConicProblem& p,
                                     const SolveReport& r);

/// Convenience overload for hand-built primal points.
CertificateReport verify_certificate(const ConicProblem& p,
                                     const std::vector<ComplexMatrix>& primal);

/// Debug dump: one `constraint` line per constraint with block-indexed
/// entry triplets. The exact format is documented in the README.
void dump_problem(const ConicProblem& p, std::ostream& os);

}  // namespace zest::sdp
