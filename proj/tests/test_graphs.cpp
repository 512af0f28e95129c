#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "zest/graphs.hpp"

using namespace zest;
using linalg::Complex;
using linalg::ComplexMatrix;

namespace {

// S = span{F1..F4} of the family graph, written out explicitly.
std::vector<ComplexMatrix> family_graph_ops(double a) {
  const double s2 = std::sin(a) * std::sin(a);
  const double c2 = std::cos(a) * std::cos(a);
  ComplexMatrix f1 = ComplexMatrix::Zero(3, 3);
  f1(0, 0) = 1;
  f1(1, 1) = c2;
  ComplexMatrix f2 = ComplexMatrix::Zero(3, 3);
  f2(1, 1) = s2;
  f2(2, 2) = 1;
  return {f1, f2, linalg::matrix_unit(3, 0, 2), linalg::matrix_unit(3, 2, 0)};
}

std::vector<ComplexMatrix> family_complement_ops(double a) {
  const double c2 = std::cos(a) * std::cos(a);
  const double t2 = std::tan(a) * std::tan(a);
  ComplexMatrix m5 = ComplexMatrix::Zero(3, 3);
  m5(0, 0) = 1;
  m5(1, 1) = -1.0 / c2;
  m5(2, 2) = t2;
  return {linalg::matrix_unit(3, 0, 1), linalg::matrix_unit(3, 1, 0),
          linalg::matrix_unit(3, 1, 2), linalg::matrix_unit(3, 2, 1), m5};
}

channels::QuantumChannel depolarizing3() {
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      kraus.push_back(linalg::matrix_unit(3, i, j) / std::sqrt(3.0));
  return channels::make_channel(std::move(kraus), "depolarizing");
}

}  // namespace

TEST_CASE("span_of dimensions and errors") {
  const auto one = graphs::span_of({linalg::identity(3),
                                    2.0 * linalg::identity(3)});
  CHECK(one.dimension() == 1);

  const auto s = graphs::span_of(family_graph_ops(0.4));
  CHECK(s.dimension() == 4);

  std::vector<ComplexMatrix> pentagon_units;
  const auto p = channels::pentagon_matrix();
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y)
      if (p(y, x) > 0)
        pentagon_units.push_back(
            ComplexMatrix(linalg::matrix_unit(5, y, x)));
  CHECK(graphs::span_of(pentagon_units).dimension() == 10);

  CHECK_THROWS_AS(graphs::span_of({ComplexMatrix::Zero(2, 2)}), AllZeroInput);
  CHECK_THROWS_AS(graphs::span_of({}), AllZeroInput);
  CHECK_THROWS_AS(
      graphs::span_of({linalg::identity(2), linalg::identity(3)}),
      DimensionMismatch);
}

TEST_CASE("orthonormality of span_of output") {
  std::mt19937 rng(9);
  std::vector<ComplexMatrix> ops;
  for (int i = 0; i < 6; ++i) ops.push_back(testsupport::random_hermitian(rng, 3));
  ops.push_back(ops[0] + ops[1]);  // dependent
  const auto s = graphs::span_of(ops);
  CHECK(s.dimension() == 6);
  for (int i = 0; i < s.dimension(); ++i)
    for (int j = 0; j < s.dimension(); ++j) {
      const auto ip = linalg::hs_inner(s.basis[i], s.basis[j]);
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
}

TEST_CASE("ncgraph of the family equals span{F1..F4}") {
  for (double a : {0.2, std::numbers::pi / 6, std::numbers::pi / 4}) {
    const auto s = graphs::ncgraph(channels::family_nalpha(a));
    CHECK(s.dimension() == 4);
    CHECK(graphs::same_subspace(s, graphs::span_of(family_graph_ops(a))));
    const auto sp = graphs::complement(s);
    CHECK(sp.dimension() == 5);
    CHECK(graphs::same_subspace(sp,
                                graphs::span_of(family_complement_ops(a))));
  }
}

TEST_CASE("ncgraph corner cases") {
  CHECK(graphs::ncgraph(channels::make_channel({linalg::identity(3)}, "id"))
            .dimension() == 1);
  CHECK(graphs::ncgraph(depolarizing3()).dimension() == 9);
}

TEST_CASE("ncbigraph dimensions") {
  CHECK(graphs::ncbigraph(channels::family_nalpha(0.3)).dimension() == 2);
  CHECK(graphs::ncbigraph(
            channels::classical_channel(channels::pentagon_matrix(), "p"))
            .dimension() == 10);
  CHECK(graphs::ncbigraph(channels::make_channel({linalg::identity(3)}, "id"))
            .dimension() == 1);
}

TEST_CASE("ncbigraph is invariant under Kraus mixing") {
  std::mt19937 rng(31);
  const auto ch = channels::family_nalpha(0.6);
  const auto k1 = graphs::ncbigraph(ch);
  const auto u = testsupport::random_unitary(rng, 2);
  std::vector<ComplexMatrix> mixed(2, ComplexMatrix::Zero(3, 3));
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j) mixed[k] += u(k, j) * ch.kraus[j];
  const auto ch2 = channels::make_channel(mixed, "mixed");
  const auto k2 = graphs::ncbigraph(ch2);
  CHECK(graphs::same_subspace(k1, k2));
  // The non-commutative graph is invariant as well.
  CHECK(graphs::same_subspace(graphs::ncgraph(ch), graphs::ncgraph(ch2)));
}

TEST_CASE("complement dimensions and projector splitting") {
  const auto one = graphs::span_of({linalg::identity(3)});
  const auto perp = graphs::complement(one);
  CHECK(perp.dimension() == 8);
  for (const auto& b : perp.basis) CHECK(std::abs(b.trace()) <= 1e-12);

  const auto full = graphs::ncgraph(depolarizing3());
  CHECK(graphs::complement(full).dimension() == 0);

  std::mt19937 rng(13);
  const auto s = graphs::span_of({testsupport::random_hermitian(rng, 3),
                                  testsupport::random_hermitian(rng, 3)});
  const auto sp = graphs::complement(s);
  CHECK(s.dimension() + sp.dimension() == 9);
  const auto m = testsupport::random_hermitian(rng, 3);
  CHECK(linalg::max_abs(graphs::project(s, m) + graphs::project(sp, m) - m) <=
        1e-10);
}

TEST_CASE("contains membership checks") {
  const auto s = graphs::ncgraph(channels::family_nalpha(0.5));
  CHECK(graphs::contains(s, linalg::identity(3)));
  CHECK_FALSE(graphs::contains(s, linalg::matrix_unit(3, 0, 1)));
  CHECK_FALSE(graphs::contains(graphs::span_of({linalg::identity(3)}),
                               linalg::matrix_unit(3, 0, 0)));
  CHECK_THROWS_AS(graphs::contains(s, linalg::identity(4)),
                  DimensionMismatch);
}

TEST_CASE("ncgraph contains the identity and is adjoint closed") {
  std::mt19937 rng(77);
  std::vector<channels::QuantumChannel> corpus = {
      channels::family_nalpha(0.11),
      channels::family_nalpha(std::numbers::pi / 4),
      channels::classical_channel(testsupport::random_stochastic(rng, 4, 3)),
      depolarizing3(),
  };
  for (const auto& ch : corpus) {
    const auto s = graphs::ncgraph(ch);
    CHECK(graphs::contains(s, linalg::identity(s.op_rows)));
    CHECK(graphs::adjoint_closed(s));
  }
}

TEST_CASE("hermitian basis of an adjoint-closed subspace") {
  const auto s = graphs::ncgraph(channels::family_nalpha(0.8 * 0.785398));
  const auto hb = graphs::hermitian_basis(s);
  CHECK(hb.size() == 4);
  for (std::size_t i = 0; i < hb.size(); ++i) {
    CHECK(linalg::hermitian(hb[i]));
    CHECK(graphs::contains(s, hb[i]));
    for (std::size_t j = 0; j < hb.size(); ++j)
      CHECK(std::abs(linalg::hs_inner(hb[i], hb[j]) -
                     (i == j ? 1.0 : 0.0)) <= 1e-10);
  }

  const auto t = graphs::tensor_with_full(s, 3);
  CHECK(t.dimension() == 36);
  CHECK(graphs::hermitian_basis(t).size() == 36);

  // A subspace that is not adjoint closed is rejected.
  const auto bad = graphs::span_of({linalg::matrix_unit(2, 0, 1)});
  CHECK_THROWS_AS(graphs::hermitian_basis(bad), SubspaceNotValid);
}
