#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zest/certify.hpp"
#include "zest/quantities.hpp"

using namespace zest;
using linalg::ComplexMatrix;

namespace {

constexpr double kPi4 = std::numbers::pi / 4.0;

const std::vector<double> kGrid = {0.05,
                                   0.15,
                                   std::numbers::pi / 12.0,
                                   std::numbers::pi / 8.0,
                                   std::numbers::pi / 6.0,
                                   std::numbers::pi / 5.0,
                                   0.7,
                                   kPi4};

double max_residual(const certify::WitnessReport& rep) {
  double r = 0.0;
  for (const auto& c : rep.constraints_checked) r = std::max(r, c.residual);
  return r;
}

}  // namespace

TEST_CASE("all analytic witnesses pass across the grid") {
  for (double a : kGrid) {
    const auto cf = quantities::closed_form_nalpha(a);

    const auto cap = certify::prop1_capacity_witness(a);
    CHECK(cap.pass);
    CHECK(max_residual(cap) <= 1e-9);
    CHECK(std::abs(cap.objective - 4.0) <= 1e-12 * 5.0);

    const auto sim = certify::prop1_simulation_witness(a);
    CHECK(sim.pass);
    CHECK(std::abs(sim.objective - 4.0) <= 1e-12 * 5.0);

    const auto prim = certify::prop2_primal_witness(a);
    CHECK(prim.pass);
    CHECK(std::abs(prim.objective - cf.theta) <= 1e-12 * (1 + cf.theta));

    const auto dual = certify::prop2_dual_witness(a);
    CHECK(dual.pass);
    CHECK(std::abs(dual.objective - cf.theta) <= 1e-12 * (1 + cf.theta));

    const auto pack = certify::lemma1_witnesses(a);
    CHECK(pack.pass);
    CHECK(std::abs(pack.objective - cf.aram) <= 1e-12 * (1 + cf.aram));

    CHECK(certify::extremality_check(a));
  }
}

TEST_CASE("the theta primal witness sits on the cone boundary at pi/4") {
  const auto w = certify::build_theta_primal_witness(kPi4);
  const ComplexMatrix m =
      linalg::kron(linalg::identity(3), w.rho) + w.T;
  CHECK(std::abs(linalg::min_eigenvalue(m)) <= 1e-12);
}

TEST_CASE("fault injection: capacity witness") {
  auto w = certify::build_capacity_witness(kPi4);
  // Perturb the (|10>,|21>) coherence.
  w.U_AB(3 * 1 + 0, 3 * 2 + 1) += 1e-3;
  w.U_AB(3 * 2 + 1, 3 * 1 + 0) += 1e-3;
  CHECK_FALSE(certify::check_capacity_witness(kPi4, w).pass);
}

TEST_CASE("fault injection: simulation witness") {
  auto w = certify::build_simulation_witness(0.4);
  w.T_B *= 0.99;
  const auto rep = certify::check_simulation_witness(0.4, w);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("fault injection: theta primal witness without the cross term") {
  const double a = std::numbers::pi / 5.0;
  auto w = certify::build_theta_primal_witness(a);
  w.T -= linalg::matrix_unit(9, 0, 4) + linalg::matrix_unit(9, 4, 0);
  const auto rep = certify::check_theta_primal_witness(a, w);
  CHECK_FALSE(rep.pass);
  // The objective drops strictly below the closed form.
  CHECK(rep.objective < rep.closed_form - 1.0);
}

TEST_CASE("fault injection: theta dual witness without Y3") {
  const double a = 0.6;
  const double c2 = std::cos(a) * std::cos(a);
  auto w = certify::build_theta_dual_witness(a);
  const ComplexMatrix y3 = linalg::matrix_unit(9, 0, 8) +
                           linalg::matrix_unit(9, 8, 0);
  w.Y -= ((1.0 + c2) / c2) * y3;
  const auto rep = certify::check_theta_dual_witness(a, w);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("fault injection: packing witness with x = 2") {
  const double a = std::numbers::pi / 6.0;
  auto w = certify::build_packing_witness(a);
  w.R_A(1, 1) = 2.0;
  const auto rep = certify::check_packing_witness(a, w);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("extremality helper accepts a single-Kraus channel") {
  const auto id = channels::make_channel({linalg::identity(3)}, "identity");
  CHECK(certify::kraus_products_independent(id));
  CHECK(certify::extremality_check(std::numbers::pi / 12.0));
  CHECK(certify::extremality_check(kPi4));
}

TEST_CASE("witness builders reject out-of-range angles") {
  CHECK_THROWS_AS(certify::prop1_capacity_witness(0.0), DomainError);
  CHECK_THROWS_AS(certify::prop2_dual_witness(1.0), DomainError);
  CHECK_THROWS_AS(certify::lemma1_witnesses(-0.1), DomainError);
  CHECK_THROWS_AS(certify::extremality_check(2.0), DomainError);
}

TEST_CASE("witness objectives match the solver values") {
  // Spot check at one interior angle; the acceptance suite sweeps the grid.
  const double a = 0.55;
  const auto ch = channels::family_nalpha(a);
  const auto cf = quantities::closed_form_nalpha(a);

  const auto th = quantities::theta(graphs::ncgraph(ch), {});
  REQUIRE(th.optimal());
  CHECK(std::abs(th.value - certify::prop2_primal_witness(a).objective) <=
        1e-6 * (1 + cf.theta));

  const auto ar = quantities::aram(ch, {});
  REQUIRE(ar.optimal());
  CHECK(std::abs(ar.value - certify::lemma1_witnesses(a).objective) <=
        1e-6 * (1 + cf.aram));

  const auto up = quantities::upsilon(ch, {});
  REQUIRE(up.optimal());
  CHECK(std::abs(up.value - certify::prop1_capacity_witness(a).objective) <=
        1e-6 * 5.0);

  const auto sg = quantities::sigma(ch, {});
  REQUIRE(sg.optimal());
  CHECK(std::abs(sg.value - certify::prop1_simulation_witness(a).objective) <=
        1e-6 * 5.0);
}
