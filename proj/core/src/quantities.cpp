#include "zest/quantities.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace zest::quantities {

namespace {

using linalg::Complex;
using linalg::hermitian_onb;
using linalg::hs_inner;
using linalg::identity;
using linalg::kron;
using linalg::partial_trace;
using sdp::BlockType;
using sdp::ConicProblem;
using sdp::Constraint;
using sdp::SolveOptions;
using sdp::SolveReport;
using sdp::SolveStatus;

constexpr double kAgreeTol = 1e-6;

SolveOptions options_of(const SolverConfig& cfg) {
  SolveOptions o;
  o.tol = cfg.tol;
  o.max_iters = cfg.max_iters;
  return o;
}

SolveReport run_solve(const ConicProblem& p, const SolverConfig& cfg) {
  if (cfg.on_problem) cfg.on_problem(p);
  return sdp::solve(p, options_of(cfg));
}

QuantityResult failed(Quantity q, SolveReport rep) {
  QuantityResult r;
  r.name = q;
  r.value = std::numeric_limits<double>::quiet_NaN();
  r.log2_value = r.value;
  r.report = std::move(rep);
  return r;
}

QuantityResult finish(Quantity q, double value, SolveReport rep) {
  QuantityResult r;
  r.name = q;
  r.value = value;
  r.log2_value = std::log2(value);
  r.report = std::move(rep);
  return r;
}

void check_agreement(const char* what, double a, double b) {
  if (std::abs(a - b) > kAgreeTol * (1.0 + std::abs(a)))
    throw Error(std::string(what) + ": primal/dual values disagree: " +
                std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::Theta: return "theta";
    case Quantity::Upsilon: return "upsilon";
    case Quantity::Sigma: return "sigma";
    case Quantity::Aram: return "aram";
    case Quantity::FractionalPacking: return "packing";
  }
  return "unknown";
}

QuantityResult theta(const OperatorSubspace& s, const SolverConfig& cfg) {
  if (s.op_rows != s.op_cols)
    throw SubspaceNotValid("theta: subspace must consist of square operators");
  const int d = s.op_rows;
  if (!graphs::contains(s, identity(d)))
    throw SubspaceNotValid("theta: subspace does not contain the identity");
  if (!graphs::adjoint_closed(s))
    throw SubspaceNotValid("theta: subspace is not closed under adjoints");

  const ComplexMatrix phiphi = linalg::phi_projector(d);
  const auto h_in = graphs::hermitian_basis(graphs::tensor_with_full(s, d));

  // Entangled-state side: maximize <Phi|W|Phi> over W >= 0 whose deviation
  // from 1 (x) rho is orthogonal to S (x) L(A'), with rho a state.
  ConicProblem primal;
  primal.label = "theta-primal(" + s.label + ")";
  const int rho_b = primal.add_block(BlockType::PSD, d);
  const int w_b = primal.add_block(BlockType::PSD, d * d);
  primal.set_objective(w_b, -phiphi);
  primal.add_constraint({{{rho_b, identity(d)}}, 1.0});
  for (const auto& h : h_in) {
    const ComplexMatrix on_rho = partial_trace(h, d, d, linalg::Subsystem::A);
    primal.add_constraint({{{w_b, h}, {rho_b, -on_rho}}, 0.0});
  }
  SolveReport rp = run_solve(primal, cfg);
  if (rp.status != SolveStatus::Optimal)
    return failed(Quantity::Theta, std::move(rp));
  const double primal_value = -rp.primal_objective;

  // Covering side: minimize t with t*1 >= tr_A Y, Y >= |Phi><Phi| and Y
  // constrained into S (x) L(A') by orthogonality to its complement.
  const auto h_out =
      graphs::hermitian_basis(graphs::tensor_with_full(graphs::complement(s), d));
  ConicProblem dual;
  dual.label = "theta-dual(" + s.label + ")";
  const int t_b = dual.add_block(BlockType::FreeHermitian, 1);
  const int y_b = dual.add_block(BlockType::FreeHermitian, d * d);
  const int s1_b = dual.add_block(BlockType::PSD, d);
  const int s2_b = dual.add_block(BlockType::PSD, d * d);
  dual.set_objective(t_b, identity(1));
  for (const auto& h : h_out) dual.add_constraint({{{y_b, h}}, 0.0});
  for (const auto& e : hermitian_onb(d)) {
    const Complex tre = e.trace();
    ComplexMatrix t_coef(1, 1);
    t_coef(0, 0) = -tre;
    dual.add_constraint(
        {{{s1_b, e}, {y_b, kron(identity(d), e)}, {t_b, t_coef}}, 0.0});
  }
  for (const auto& b : hermitian_onb(d * d))
    dual.add_constraint(
        {{{s2_b, b}, {y_b, -b}}, -hs_inner(b, phiphi).real()});
  SolveReport rd = run_solve(dual, cfg);
  if (rd.status != SolveStatus::Optimal)
    return failed(Quantity::Theta, std::move(rd));
  const double dual_value = rd.primal_objective;

  check_agreement("theta", primal_value, dual_value);

  QuantityResult out = finish(Quantity::Theta, primal_value, rp);
  out.cross_report = std::move(rd);
  const ComplexMatrix rho = out.report.primal_solution[rho_b];
  const ComplexMatrix w = out.report.primal_solution[w_b];
  out.witness["rho"] = rho;
  out.witness["T"] = w - kron(identity(d), rho);
  out.witness["Y"] = out.cross_report->primal_solution[y_b];
  return out;
}

QuantityResult upsilon(const QuantumChannel& ch, const SolverConfig& cfg) {
  const auto cd = channels::choi(ch);
  const int da = ch.dim_in;
  const int db = ch.dim_out;
  const int dab = da * db;

  // The slack V = R (x) 1 - U must be PSD with tr(P V) = 0, which pins its
  // support inside ker P. Writing V = Q Vt Q^dag over an orthonormal kernel
  // basis Q removes the face and keeps the program strictly feasible.
  const auto peig = linalg::hermitian_eig(cd.P);
  int kernel_dim = 0;
  while (kernel_dim < dab && peig.eigenvalues(kernel_dim) < 0.5) ++kernel_dim;
  const ComplexMatrix q = peig.eigenvectors.leftCols(kernel_dim);

  ConicProblem p;
  p.label = "upsilon(" + ch.label + ")";
  const int u_b = p.add_block(BlockType::PSD, dab);
  const int v_b =
      kernel_dim > 0 ? p.add_block(BlockType::PSD, kernel_dim) : -1;
  const int r_b = p.add_block(BlockType::FreeHermitian, da);
  p.set_objective(r_b, -identity(da));
  for (const auto& e : hermitian_onb(db))
    p.add_constraint({{{u_b, kron(identity(da), e)}}, e.trace().real()});
  for (const auto& b : hermitian_onb(dab)) {
    const ComplexMatrix on_r = partial_trace(b, da, db, linalg::Subsystem::B);
    Constraint con{{{u_b, b}, {r_b, -on_r}}, 0.0};
    if (kernel_dim > 0) {
      const ComplexMatrix on_v =
          linalg::hermitian_part(q.adjoint() * b * q);
      con.coefficients.push_back({v_b, on_v});
    }
    p.add_constraint(std::move(con));
  }

  SolveReport rep = run_solve(p, cfg);
  if (rep.status != SolveStatus::Optimal)
    return failed(Quantity::Upsilon, std::move(rep));
  QuantityResult out =
      finish(Quantity::Upsilon, -rep.primal_objective, std::move(rep));
  out.witness["R_A"] = out.report.primal_solution[r_b];
  out.witness["U_AB"] = out.report.primal_solution[u_b];
  return out;
}

QuantityResult sigma(const QuantumChannel& ch, const SolverConfig& cfg) {
  const auto cd = channels::choi(ch);
  const int da = ch.dim_in;
  const int db = ch.dim_out;

  // Conjugate form of min{tr T_B : 1 (x) T_B >= J}: maximize <J, X> over
  // states with tr_A X = 1_B; T_B is recovered from the multipliers.
  ConicProblem p;
  p.label = "sigma(" + ch.label + ")";
  const int x_b = p.add_block(BlockType::PSD, da * db);
  p.set_objective(x_b, -cd.J);
  const auto basis = hermitian_onb(db);
  for (const auto& b : basis)
    p.add_constraint({{{x_b, kron(identity(da), b)}}, b.trace().real()});

  SolveReport rep = run_solve(p, cfg);
  if (rep.status != SolveStatus::Optimal)
    return failed(Quantity::Sigma, std::move(rep));
  QuantityResult out =
      finish(Quantity::Sigma, -rep.primal_objective, std::move(rep));
  ComplexMatrix t_out = ComplexMatrix::Zero(db, db);
  for (std::size_t l = 0; l < basis.size(); ++l)
    t_out -= out.report.dual_multipliers(static_cast<Eigen::Index>(l)) *
             basis[l];
  out.witness["T_B"] = t_out;
  return out;
}

QuantityResult aram(const QuantumChannel& ch, const SolverConfig& cfg) {
  const auto cd = channels::choi(ch);
  const int da = ch.dim_in;
  const int db = ch.dim_out;
  const ComplexMatrix one_ab = identity(da * db);

  // Packing side: max tr R, R >= 0, tr_A[P (R (x) 1)] <= 1_B.
  ConicProblem packing;
  packing.label = "aram-packing(" + ch.label + ")";
  const int r_b = packing.add_block(BlockType::PSD, da);
  const int sb_b = packing.add_block(BlockType::PSD, db);
  packing.set_objective(r_b, -identity(da));
  for (const auto& e : hermitian_onb(db)) {
    // <E, tr_A[P (R (x) 1)]> = <tr_B[(1 (x) E) P], R>.
    const ComplexMatrix g = linalg::hermitian_part(partial_trace(
        kron(identity(da), e) * cd.P, da, db, linalg::Subsystem::B));
    packing.add_constraint({{{r_b, g}, {sb_b, e}}, e.trace().real()});
  }
  SolveReport rep_p = run_solve(packing, cfg);
  if (rep_p.status != SolveStatus::Optimal)
    return failed(Quantity::Aram, std::move(rep_p));
  const double packing_value = -rep_p.primal_objective;

  // Covering side: min tr T, T >= 0, tr_B[P (1 (x) T)] >= 1_A.
  ConicProblem covering;
  covering.label = "aram-covering(" + ch.label + ")";
  const int t_b = covering.add_block(BlockType::PSD, db);
  const int sa_b = covering.add_block(BlockType::PSD, da);
  covering.set_objective(t_b, identity(db));
  for (const auto& e : hermitian_onb(da)) {
    // <E, tr_B[P (1 (x) T)]> = <tr_A[(E (x) 1) P], T>.
    const ComplexMatrix k = linalg::hermitian_part(partial_trace(
        kron(e, identity(db)) * cd.P, da, db, linalg::Subsystem::A));
    covering.add_constraint({{{t_b, k}, {sa_b, -e}}, e.trace().real()});
  }
  SolveReport rep_d = run_solve(covering, cfg);
  if (rep_d.status != SolveStatus::Optimal)
    return failed(Quantity::Aram, std::move(rep_d));
  const double covering_value = rep_d.primal_objective;

  check_agreement("aram", packing_value, covering_value);

  QuantityResult out = finish(Quantity::Aram, packing_value, rep_p);
  out.cross_report = std::move(rep_d);
  out.witness["R_A"] = out.report.primal_solution[r_b];
  out.witness["T_B"] = out.cross_report->primal_solution[t_b];
  return out;
}

QuantityResult fractional_packing(const RealMatrix& p,
                                  const SolverConfig& cfg) {
  const int ny = static_cast<int>(p.rows());
  const int nx = static_cast<int>(p.cols());
  if (ny == 0 || nx == 0)
    throw NotStochastic("fractional_packing: empty matrix");
  if (p.minCoeff() < 0.0)
    throw NotStochastic("fractional_packing: negative entry");
  for (int x = 0; x < nx; ++x)
    if (std::abs(p.col(x).sum() - 1.0) > 1e-10)
      throw NotStochastic("fractional_packing: column " + std::to_string(x) +
                          " does not sum to 1");

  ConicProblem lp;
  lp.label = "fractional-packing";
  const int v_b = lp.add_block(BlockType::Nonneg, nx);
  const int s1_b = lp.add_block(BlockType::Nonneg, ny);
  const int s2_b = lp.add_block(BlockType::Nonneg, nx);
  lp.set_objective(v_b, -ComplexMatrix::Ones(nx, 1));
  for (int y = 0; y < ny; ++y) {
    ComplexMatrix row = ComplexMatrix::Zero(nx, 1);
    for (int x = 0; x < nx; ++x)
      if (p(y, x) > 0.0) row(x, 0) = 1.0;
    ComplexMatrix sl = ComplexMatrix::Zero(ny, 1);
    sl(y, 0) = 1.0;
    lp.add_constraint({{{v_b, row}, {s1_b, sl}}, 1.0});
  }
  for (int x = 0; x < nx; ++x) {
    ComplexMatrix ex = ComplexMatrix::Zero(nx, 1);
    ex(x, 0) = 1.0;
    lp.add_constraint({{{v_b, ex}, {s2_b, ex}}, 1.0});
  }
  SolveReport rep = run_solve(lp, cfg);
  if (rep.status != SolveStatus::Optimal)
    return failed(Quantity::FractionalPacking, std::move(rep));
  QuantityResult out = finish(Quantity::FractionalPacking,
                              -rep.primal_objective, std::move(rep));
  out.witness["v_x"] = out.report.primal_solution[v_b];
  return out;
}

ClosedFormNalpha closed_form_nalpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= std::numbers::pi / 4.0))
    throw DomainError("closed_form_nalpha: alpha must lie in (0, pi/4]");
  const double c2 = std::cos(alpha) * std::cos(alpha);
  const double v = 2.0 + c2 + 1.0 / c2;
  return {v, 4.0, 4.0, v};
}

SeparationReport separation_report(double alpha, const SolverConfig& cfg) {
  const auto ch = channels::family_nalpha(alpha);
  const auto th = theta(graphs::ncgraph(ch), cfg);
  const auto up = upsilon(ch, cfg);
  if (!th.optimal() || !up.optimal())
    throw Error("separation_report: solver failure at alpha=" +
                std::to_string(alpha));
  SeparationReport rep{th.log2_value, up.log2_value,
                       th.log2_value - up.log2_value};
  if (!(rep.gap > 0.0))
    throw Error("separation_report: no positive gap at alpha=" +
                std::to_string(alpha));
  return rep;
}

}  // namespace zest::quantities
