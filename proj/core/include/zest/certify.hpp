#pragma once

#include <string>
#include <vector>

#include "zest/channels.hpp"
#include "zest/linalg.hpp"

namespace zest::certify {

using channels::QuantumChannel;
using linalg::ComplexMatrix;

/// Result of checking one analytic witness: every listed residual must be
/// at most 1e-9 and the objective must match the closed form to 1e-12
/// relative for pass to hold.
struct WitnessReport {
  std::string witness_name;
  struct Check {
    std::string description;
    double residual;
  };
  std::vector<Check> constraints_checked;
  double objective = 0.0;
  double closed_form = 0.0;
  bool pass = false;
};

// The witness operators are built from closed-form trigonometric
// expressions in alpha, never from solver output; the check functions
// accept them separately so tests can inject faults.

struct CapacityWitness {
  ComplexMatrix R_A;   // 3x3
  ComplexMatrix U_AB;  // 9x9
};
CapacityWitness build_capacity_witness(double alpha);
WitnessReport check_capacity_witness(double alpha, const CapacityWitness& w);
/// Feasible point of the no-signalling capacity SDP with objective 4.
WitnessReport prop1_capacity_witness(double alpha);

struct SimulationWitness {
  ComplexMatrix T_B;  // 3x3
};
SimulationWitness build_simulation_witness(double alpha);
WitnessReport check_simulation_witness(double alpha,
                                       const SimulationWitness& w);
/// Feasible point of the simulation-cost SDP with objective 4.
WitnessReport prop1_simulation_witness(double alpha);

struct ThetaPrimalWitness {
  ComplexMatrix rho;  // 3x3
  ComplexMatrix T;    // 9x9
};
ThetaPrimalWitness build_theta_primal_witness(double alpha);
WitnessReport check_theta_primal_witness(double alpha,
                                         const ThetaPrimalWitness& w);
/// Feasible point of the entangled-state program with objective
/// 2 + cos^2 + cos^-2.
WitnessReport prop2_primal_witness(double alpha);

struct ThetaDualWitness {
  ComplexMatrix Y;  // 9x9
};
ThetaDualWitness build_theta_dual_witness(double alpha);
WitnessReport check_theta_dual_witness(double alpha, const ThetaDualWitness& w);
/// Feasible point of the covering program with tr_A Y proportional to the
/// identity at factor 2 + cos^2 + cos^-2.
WitnessReport prop2_dual_witness(double alpha);

struct PackingWitness {
  ComplexMatrix R_A;  // 3x3
  ComplexMatrix T_B;  // 3x3
};
PackingWitness build_packing_witness(double alpha);
WitnessReport check_packing_witness(double alpha, const PackingWitness& w);
/// Feasible primal/dual pair of the quantum fractional packing SDPs, both
/// with objective 2 + cos^2 + cos^-2.
WitnessReport lemma1_witnesses(double alpha);

/// True iff the operators {E_i^dag E_j} of a channel are linearly
/// independent (singular-value cutoff 1e-10 relative).
bool kraus_products_independent(const QuantumChannel& ch);

/// Extremality of the family channel at angle alpha.
bool extremality_check(double alpha);

}  // namespace zest::certify
