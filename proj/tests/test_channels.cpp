#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "zest/channels.hpp"

using namespace zest;
using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

channels::QuantumChannel depolarizing3() {
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      kraus.push_back(linalg::matrix_unit(3, i, j) / std::sqrt(3.0));
  return channels::make_channel(std::move(kraus), "depolarizing");
}

}  // namespace

TEST_CASE("make_channel validates completeness") {
  const auto id = channels::make_channel({linalg::identity(3)}, "identity");
  CHECK(id.dim_in == 3);
  CHECK(id.completeness_residual <= 1e-15);

  const auto fam = channels::family_nalpha(std::numbers::pi / 4);
  ComplexMatrix acc = ComplexMatrix::Zero(3, 3);
  for (const auto& e : fam.kraus) acc += e.adjoint() * e;
  CHECK(linalg::max_abs(acc - linalg::identity(3)) == 0.0);

  // A lone damping operator is not trace preserving.
  CHECK_THROWS_AS(channels::make_channel({fam.kraus[0]}, "broken"),
                  CompletenessViolation);
  CHECK_THROWS_AS(channels::make_channel({}, "empty"), DimensionMismatch);
}

TEST_CASE("family Kraus entries") {
  const auto pi4 = channels::family_nalpha(std::numbers::pi / 4);
  CHECK(pi4.kraus[0](0, 1).real() ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(pi4.kraus[0](1, 2) == Complex(1.0, 0.0));
  CHECK(pi4.kraus[0].cwiseAbs().sum() ==
        doctest::Approx(std::sqrt(0.5) + 1.0));

  const auto pi6 = channels::family_nalpha(std::numbers::pi / 6);
  CHECK(pi6.kraus[1](2, 1).real() ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(pi6.kraus[1](1, 0) == Complex(1.0, 0.0));

  CHECK_THROWS_AS(channels::family_nalpha(0.0), DomainError);
  CHECK_THROWS_AS(channels::family_nalpha(std::numbers::pi / 4 + 1e-9),
                  DomainError);
}

TEST_CASE("family channel annihilates the ground state") {
  for (double a : {0.1, 0.5, std::numbers::pi / 4}) {
    const auto ch = channels::family_nalpha(a);
    const auto& e = ch.kraus[0];
    const ComplexMatrix p0 = linalg::matrix_unit(3, 0, 0);
    const ComplexMatrix p1 = linalg::matrix_unit(3, 1, 1);
    CHECK(linalg::max_abs(e * p0 * e.adjoint()) <= 1e-15);
    const double s2 = std::sin(a) * std::sin(a);
    CHECK(linalg::max_abs(e * p1 * e.adjoint() - s2 * p0) <= 1e-15);
  }
}

TEST_CASE("Choi matrix of the family matches the closed form") {
  const double a = 0.37;
  const double s = std::sin(a), c = std::cos(a);
  const auto cd = channels::choi(channels::family_nalpha(a));
  CHECK(cd.rank == 2);

  ComplexMatrix u = ComplexMatrix::Zero(9, 1);
  u(1 * 3 + 0, 0) = s / std::sqrt(1 + s * s);
  u(2 * 3 + 1, 0) = 1.0 / std::sqrt(1 + s * s);
  ComplexMatrix v = ComplexMatrix::Zero(9, 1);
  v(1 * 3 + 2, 0) = c / std::sqrt(1 + c * c);
  v(0 * 3 + 1, 0) = 1.0 / std::sqrt(1 + c * c);
  const ComplexMatrix expected =
      (1 + s * s) * u * u.adjoint() + (1 + c * c) * v * v.adjoint();
  CHECK(linalg::max_abs(cd.J - expected) <= 1e-14);

  const ComplexMatrix expected_p = u * u.adjoint() + v * v.adjoint();
  CHECK(linalg::max_abs(cd.P - expected_p) <= 1e-12);
  CHECK(linalg::max_abs(cd.P * cd.P - cd.P) <= 1e-12);
  CHECK(linalg::max_abs(cd.P * cd.J - cd.J) <= 1e-9);
}

TEST_CASE("Choi of identity and depolarizing") {
  const auto id = channels::choi(
      channels::make_channel({linalg::identity(3)}, "identity"));
  CHECK(id.rank == 1);
  CHECK(linalg::max_abs(id.J - linalg::phi_projector(3)) <= 1e-14);

  const auto dep = channels::choi(depolarizing3());
  CHECK(dep.rank == 9);
  CHECK(linalg::max_abs(dep.J - linalg::identity(9) / 3.0) <= 1e-14);
}

TEST_CASE("Choi invariants over a channel corpus") {
  std::mt19937 rng(41);
  std::vector<channels::QuantumChannel> corpus = {
      channels::family_nalpha(0.2),
      channels::family_nalpha(std::numbers::pi / 4),
      channels::make_channel({linalg::identity(3)}, "identity"),
      depolarizing3(),
      channels::classical_channel(channels::pentagon_matrix(), "pentagon"),
      channels::classical_channel(testsupport::random_stochastic(rng, 4, 4)),
  };
  for (const auto& ch : corpus) {
    const auto cd = channels::choi(ch);
    CHECK(std::abs(cd.J.trace().real() - ch.dim_in) <= 1e-10);
    CHECK(linalg::max_abs(linalg::partial_trace(cd.J, ch.dim_in, ch.dim_out,
                                                linalg::Subsystem::B) -
                          linalg::identity(ch.dim_in)) <= 1e-10);
    CHECK(linalg::min_eigenvalue(cd.J) >= -1e-10);
  }
}

TEST_CASE("classical channels") {
  const auto bit = channels::classical_channel(Eigen::MatrixXd::Identity(2, 2),
                                               "noiseless-bit");
  CHECK(bit.kraus.size() == 2);

  const auto pent =
      channels::classical_channel(channels::pentagon_matrix(), "pentagon");
  CHECK(pent.kraus.size() == 10);
  CHECK(pent.completeness_residual <= 1e-12);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 0) = 0.9;
  CHECK_THROWS_AS(channels::classical_channel(bad, "bad"), NotStochastic);
  Eigen::MatrixXd neg(2, 2);
  neg << 1.5, 0.0, -0.5, 1.0;
  CHECK_THROWS_AS(channels::classical_channel(neg, "neg"), NotStochastic);
}

TEST_CASE("classical Choi is diagonal with p(y|x) entries") {
  std::mt19937 rng(4);
  const auto p = testsupport::random_stochastic(rng, 3, 4);
  const auto cd = channels::choi(channels::classical_channel(p));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 3; ++y)
      CHECK(std::abs(cd.J(x * 3 + y, x * 3 + y).real() - p(y, x)) <= 1e-12);
  ComplexMatrix offdiag = cd.J;
  offdiag.diagonal().setZero();
  CHECK(linalg::max_abs(offdiag) <= 1e-14);
}

TEST_CASE("tensor product channel") {
  const auto ch = channels::family_nalpha(0.5);
  const auto sq = channels::tensor(ch, ch);
  CHECK(sq.dim_in == 9);
  CHECK(sq.dim_out == 9);
  CHECK(sq.kraus.size() == 4);
  CHECK(sq.completeness_residual <= 1e-12);

  const auto cd = channels::choi(sq);
  CHECK(std::abs(cd.J.trace().real() - 9.0) <= 1e-10);
  CHECK(cd.rank == 4);
}
