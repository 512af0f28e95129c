#include "zest/certify.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <utility>

#include "zest/graphs.hpp"

namespace zest::certify {

namespace {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::hermitian_part;
using linalg::identity;
using linalg::kron;
using linalg::matrix_unit;
using linalg::partial_trace;

constexpr double kResidualBar = 1e-9;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= std::numbers::pi / 4.0))
    throw DomainError("certify: alpha must lie in (0, pi/4]");
}

// |ab><cd| on C^3 (x) C^3.
ComplexMatrix unit9(int a, int b, int c, int d) {
  return matrix_unit(9, 3 * a + b, 3 * c + d);
}

double psd_defect(const ComplexMatrix& m) {
  return std::max(0.0, -linalg::min_eigenvalue(hermitian_part(m)));
}

void finish(WitnessReport& rep) {
  bool ok = true;
  for (const auto& c : rep.constraints_checked)
    if (!(c.residual <= kResidualBar)) ok = false;
  if (!(std::abs(rep.objective - rep.closed_form) <=
        1e-12 * (1.0 + std::abs(rep.closed_form))))
    ok = false;
  rep.pass = ok;
}

ComplexMatrix support_projector(double alpha) {
  return channels::choi(channels::family_nalpha(alpha)).P;
}

double closed_form_value(double alpha) {
  const double c2 = std::cos(alpha) * std::cos(alpha);
  return 2.0 + c2 + 1.0 / c2;
}

}  // namespace

CapacityWitness build_capacity_witness(double alpha) {
  require_alpha(alpha);
  const double s = std::sin(alpha);
  const double c = std::cos(alpha);
  CapacityWitness w;
  w.R_A = ComplexMatrix::Zero(3, 3);
  w.R_A(0, 0) = 2.0 * c * c;
  w.R_A(1, 1) = 2.0;
  w.R_A(2, 2) = 2.0 * s * s;
  w.U_AB = c * c * unit9(0, 1, 0, 1) + s * s * unit9(2, 1, 2, 1) +
           unit9(1, 0, 1, 0) + unit9(1, 2, 1, 2) +
           s * (unit9(1, 0, 2, 1) + unit9(2, 1, 1, 0)) +
           c * (unit9(0, 1, 1, 2) + unit9(1, 2, 0, 1));
  return w;
}

WitnessReport check_capacity_witness(double alpha, const CapacityWitness& w) {
  require_alpha(alpha);
  WitnessReport rep;
  rep.witness_name = "prop1-capacity";
  const ComplexMatrix slack = kron(w.R_A, identity(3)) - w.U_AB;
  rep.constraints_checked.push_back({"U_AB >= 0", psd_defect(w.U_AB)});
  rep.constraints_checked.push_back({"R_A (x) 1 - U_AB >= 0",
                                     psd_defect(slack)});
  rep.constraints_checked.push_back(
      {"tr_A U_AB = 1_B",
       linalg::max_abs(partial_trace(w.U_AB, 3, 3, linalg::Subsystem::A) -
                       identity(3))});
  rep.constraints_checked.push_back(
      {"tr P (R_A (x) 1 - U_AB) = 0",
       std::abs(linalg::hs_inner(support_projector(alpha), slack))});
  rep.objective = w.R_A.trace().real();
  rep.closed_form = 4.0;
  finish(rep);
  return rep;
}

WitnessReport prop1_capacity_witness(double alpha) {
  return check_capacity_witness(alpha, build_capacity_witness(alpha));
}

SimulationWitness build_simulation_witness(double alpha) {
  require_alpha(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double c2 = std::cos(alpha) * std::cos(alpha);
  SimulationWitness w;
  w.T_B = ComplexMatrix::Zero(3, 3);
  w.T_B(0, 0) = 2.0 * s2;
  w.T_B(1, 1) = 2.0;
  w.T_B(2, 2) = 2.0 * c2;
  return w;
}

WitnessReport check_simulation_witness(double alpha,
                                       const SimulationWitness& w) {
  require_alpha(alpha);
  WitnessReport rep;
  rep.witness_name = "prop1-simulation";
  const ComplexMatrix j = channels::choi(channels::family_nalpha(alpha)).J;
  rep.constraints_checked.push_back(
      {"1 (x) T_B - J >= 0", psd_defect(kron(identity(3), w.T_B) - j)});
  rep.objective = w.T_B.trace().real();
  rep.closed_form = 4.0;
  finish(rep);
  return rep;
}

WitnessReport prop1_simulation_witness(double alpha) {
  return check_simulation_witness(alpha, build_simulation_witness(alpha));
}

ThetaPrimalWitness build_theta_primal_witness(double alpha) {
  require_alpha(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double c2 = std::cos(alpha) * std::cos(alpha);
  ThetaPrimalWitness w;
  w.rho = ComplexMatrix::Zero(3, 3);
  w.rho(0, 0) = c2 / (1.0 + c2);
  w.rho(1, 1) = 1.0 / (1.0 + c2);
  ComplexMatrix t1 = ComplexMatrix::Zero(3, 3);
  t1(0, 0) = 1.0;
  t1(1, 1) = -1.0 / c2;
  t1(2, 2) = s2 / c2;
  t1 /= (1.0 + c2);
  ComplexMatrix t2 = ComplexMatrix::Zero(3, 3);
  t2(0, 0) = c2 * c2;
  t2(1, 1) = -1.0;
  w.T = kron(t1, t2) + unit9(0, 0, 1, 1) + unit9(1, 1, 0, 0);
  return w;
}

WitnessReport check_theta_primal_witness(double alpha,
                                         const ThetaPrimalWitness& w) {
  require_alpha(alpha);
  WitnessReport rep;
  rep.witness_name = "prop2-primal";
  rep.constraints_checked.push_back(
      {"tr rho = 1", std::abs(w.rho.trace().real() - 1.0)});
  rep.constraints_checked.push_back({"rho >= 0", psd_defect(w.rho)});
  const auto sperp =
      graphs::complement(graphs::ncgraph(channels::family_nalpha(alpha)));
  const auto sperp_tensor = graphs::tensor_with_full(sperp, 3);
  rep.constraints_checked.push_back(
      {"T in S^perp (x) L(A')",
       linalg::hs_norm(w.T - graphs::project(sperp_tensor, w.T))});
  const ComplexMatrix m = kron(identity(3), w.rho) + w.T;
  rep.constraints_checked.push_back({"1 (x) rho + T >= 0", psd_defect(m)});
  const ComplexMatrix phi = linalg::phi_vector(3);
  rep.objective = (phi.adjoint() * m * phi)(0, 0).real();
  rep.closed_form = closed_form_value(alpha);
  finish(rep);
  return rep;
}

WitnessReport prop2_primal_witness(double alpha) {
  return check_theta_primal_witness(alpha, build_theta_primal_witness(alpha));
}

ThetaDualWitness build_theta_dual_witness(double alpha) {
  require_alpha(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double c2 = std::cos(alpha) * std::cos(alpha);
  ComplexMatrix y1 = ComplexMatrix::Zero(3, 3);
  y1(0, 0) = (1.0 + c2) / c2;
  y1(1, 1) = 1.0 + c2;
  ComplexMatrix y2 = ComplexMatrix::Zero(3, 3);
  y2(0, 0) = 2.0 - 1.0 / c2;
  y2(1, 1) = 1.0 / c2 - s2;
  y2(2, 2) = (1.0 + c2) / c2;
  const ComplexMatrix y3 = unit9(0, 0, 2, 2) + unit9(2, 2, 0, 0);
  ThetaDualWitness w;
  w.Y = kron(y1, matrix_unit(3, 0, 0) + matrix_unit(3, 1, 1)) +
        kron(y2, matrix_unit(3, 2, 2)) + ((1.0 + c2) / c2) * y3;
  return w;
}

WitnessReport check_theta_dual_witness(double alpha,
                                       const ThetaDualWitness& w) {
  require_alpha(alpha);
  WitnessReport rep;
  rep.witness_name = "prop2-dual";
  const auto s = graphs::ncgraph(channels::family_nalpha(alpha));
  const auto s_tensor = graphs::tensor_with_full(s, 3);
  rep.constraints_checked.push_back(
      {"Y in S (x) L(A')",
       linalg::hs_norm(w.Y - graphs::project(s_tensor, w.Y))});
  rep.constraints_checked.push_back(
      {"Y - |Phi><Phi| >= 0", psd_defect(w.Y - linalg::phi_projector(3))});
  const ComplexMatrix tra = partial_trace(w.Y, 3, 3, linalg::Subsystem::A);
  const double factor = closed_form_value(alpha);
  rep.constraints_checked.push_back(
      {"tr_A Y proportional to 1_B",
       linalg::max_abs(tra - factor * identity(3))});
  rep.objective = linalg::operator_norm(tra);
  rep.closed_form = factor;
  finish(rep);
  return rep;
}

WitnessReport prop2_dual_witness(double alpha) {
  return check_theta_dual_witness(alpha, build_theta_dual_witness(alpha));
}

PackingWitness build_packing_witness(double alpha) {
  require_alpha(alpha);
  const double s2 = std::sin(alpha) * std::sin(alpha);
  const double c2 = std::cos(alpha) * std::cos(alpha);
  PackingWitness w;
  w.R_A = ComplexMatrix::Zero(3, 3);
  w.R_A(0, 0) = 2.0 - s2;
  w.R_A(1, 1) = 1.0 + 1.0 / c2;
  w.T_B = ComplexMatrix::Zero(3, 3);
  w.T_B(1, 1) = 2.0 - s2;
  w.T_B(2, 2) = 1.0 + 1.0 / c2;
  return w;
}

WitnessReport check_packing_witness(double alpha, const PackingWitness& w) {
  require_alpha(alpha);
  WitnessReport rep;
  rep.witness_name = "lemma1-packing";
  const ComplexMatrix p = support_projector(alpha);
  rep.constraints_checked.push_back({"R_A >= 0", psd_defect(w.R_A)});
  rep.constraints_checked.push_back({"T_B >= 0", psd_defect(w.T_B)});
  const ComplexMatrix primal_image = hermitian_part(
      partial_trace(p * kron(w.R_A, identity(3)), 3, 3, linalg::Subsystem::A));
  const auto primal_eig = linalg::hermitian_eig(primal_image - identity(3));
  rep.constraints_checked.push_back(
      {"tr_A P (R_A (x) 1) <= 1_B",
       std::max(0.0, primal_eig.eigenvalues.maxCoeff())});
  const ComplexMatrix dual_image = hermitian_part(
      partial_trace(p * kron(identity(3), w.T_B), 3, 3, linalg::Subsystem::B));
  rep.constraints_checked.push_back(
      {"tr_B P (1 (x) T_B) >= 1_A", psd_defect(dual_image - identity(3))});
  rep.objective = w.R_A.trace().real();
  rep.constraints_checked.push_back(
      {"dual objective matches primal",
       std::abs(w.T_B.trace().real() - w.R_A.trace().real())});
  rep.closed_form = closed_form_value(alpha);
  finish(rep);
  return rep;
}

WitnessReport lemma1_witnesses(double alpha) {
  return check_packing_witness(alpha, build_packing_witness(alpha));
}

bool kraus_products_independent(const QuantumChannel& ch) {
  std::vector<ComplexMatrix> prods;
  for (const auto& ei : ch.kraus)
    for (const auto& ej : ch.kraus) prods.push_back(ei.adjoint() * ej);
  Eigen::MatrixXcd stack(prods.front().size(),
                         static_cast<Eigen::Index>(prods.size()));
  for (std::size_t k = 0; k < prods.size(); ++k)
    stack.col(k) = Eigen::Map<const Eigen::VectorXcd>(prods[k].data(),
                                                      prods[k].size());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stack);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return false;
  int rank = 0;
  for (Eigen::Index t = 0; t < sv.size(); ++t)
    if (sv(t) > 1e-10 * sv(0)) ++rank;
  return rank == static_cast<int>(prods.size());
}

bool extremality_check(double alpha) {
  require_alpha(alpha);
  return kraus_products_independent(channels::family_nalpha(alpha));
}

}  // namespace zest::certify
