#include "zest/channels.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace zest::channels {

using linalg::Complex;

QuantumChannel make_channel(std::vector<ComplexMatrix> kraus,
                            std::string label) {
  if (kraus.empty())
    throw DimensionMismatch("make_channel: empty Kraus list");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  if (rows <= 0 || cols <= 0)
    throw DimensionMismatch("make_channel: empty Kraus operator");
  for (const auto& e : kraus)
    if (e.rows() != rows || e.cols() != cols)
      throw DimensionMismatch("make_channel: Kraus operators differ in shape");

  ComplexMatrix acc = ComplexMatrix::Zero(cols, cols);
  for (const auto& e : kraus) acc += e.adjoint() * e;
  const double residual =
      linalg::max_abs(acc - ComplexMatrix::Identity(cols, cols));
  if (residual > 1e-10)
    throw CompletenessViolation(
        "make_channel: sum E^dag E deviates from identity by " +
        std::to_string(residual));

  QuantumChannel ch;
  ch.dim_in = static_cast<int>(cols);
  ch.dim_out = static_cast<int>(rows);
  ch.kraus = std::move(kraus);
  ch.label = std::move(label);
  ch.completeness_residual = residual;
  return ch;
}

QuantumChannel family_nalpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= std::numbers::pi / 4.0))
    throw DomainError("family_nalpha: alpha must lie in (0, pi/4]");
  ComplexMatrix e = ComplexMatrix::Zero(3, 3);
  e(0, 1) = std::sin(alpha);
  e(1, 2) = 1.0;
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(2, 1) = std::cos(alpha);
  d(1, 0) = 1.0;
  return make_channel({e, d}, "nalpha");
}

ChoiData choi(const QuantumChannel& ch) {
  const int da = ch.dim_in;
  const int db = ch.dim_out;
  ComplexMatrix j = ComplexMatrix::Zero(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < da; ++k) {
      ComplexMatrix out = ComplexMatrix::Zero(db, db);
      for (const auto& e : ch.kraus)
        out += e.col(i) * e.col(k).adjoint();
      j.block(i * db, k * db, db, db) = out;
    }
  j = linalg::hermitian_part(j);

  const auto eig = linalg::hermitian_eig(j);
  const double lam_max = eig.eigenvalues.size()
                             ? std::max(0.0, eig.eigenvalues.maxCoeff())
                             : 0.0;
  const double cutoff = 1e-9 * lam_max;
  ComplexMatrix p = ComplexMatrix::Zero(da * db, da * db);
  int rank = 0;
  for (Eigen::Index t = 0; t < eig.eigenvalues.size(); ++t) {
    if (eig.eigenvalues(t) > cutoff) {
      const ComplexMatrix v = eig.eigenvectors.col(t);
      p += v * v.adjoint();
      ++rank;
    }
  }
  return {std::move(j), linalg::hermitian_part(p), rank};
}

QuantumChannel classical_channel(const RealMatrix& p, std::string label) {
  const int ny = static_cast<int>(p.rows());
  const int nx = static_cast<int>(p.cols());
  if (ny == 0 || nx == 0) throw NotStochastic("classical_channel: empty matrix");
  if (p.minCoeff() < 0.0)
    throw NotStochastic("classical_channel: negative entry");
  for (int x = 0; x < nx; ++x)
    if (std::abs(p.col(x).sum() - 1.0) > 1e-10)
      throw NotStochastic("classical_channel: column " + std::to_string(x) +
                          " does not sum to 1");
  std::vector<ComplexMatrix> kraus;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      if (p(y, x) > 0.0) {
        ComplexMatrix e = ComplexMatrix::Zero(ny, nx);
        e(y, x) = std::sqrt(p(y, x));
        kraus.push_back(std::move(e));
      }
  return make_channel(std::move(kraus),
                      label.empty() ? "classical" : std::move(label));
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus.size() * b.kraus.size());
  for (const auto& ea : a.kraus)
    for (const auto& eb : b.kraus) kraus.push_back(linalg::kron(ea, eb));
  return make_channel(std::move(kraus), a.label + "*" + b.label);
}

RealMatrix pentagon_matrix() {
  RealMatrix p = RealMatrix::Zero(5, 5);
  for (int x = 0; x < 5; ++x) {
    p(x, x) = 0.5;
    p((x + 1) % 5, x) = 0.5;
  }
  return p;
}

}  // namespace zest::channels
