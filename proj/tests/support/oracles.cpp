#include "support/oracles.hpp"

#include <limits>
#include <vector>

namespace zest::testsupport {

double lp_vertex_maximum(const Eigen::MatrixXd& g, const Eigen::VectorXd& h,
                         const Eigen::VectorXd& c) {
  const int rows = static_cast<int>(g.rows());
  const int n = static_cast<int>(g.cols());
  double best = -std::numeric_limits<double>::infinity();

  std::vector<int> idx(n);
  for (int k = 0; k < n; ++k) idx[k] = k;
  const auto advance = [&]() {
    int k = n - 1;
    while (k >= 0 && idx[k] == rows - n + k) --k;
    if (k < 0) return false;
    ++idx[k];
    for (int t = k + 1; t < n; ++t) idx[t] = idx[t - 1] + 1;
    return true;
  };

  Eigen::MatrixXd sub(n, n);
  Eigen::VectorXd rhs(n);
  do {
    for (int k = 0; k < n; ++k) {
      sub.row(k) = g.row(idx[k]);
      rhs(k) = h(idx[k]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd v = lu.solve(rhs);
    if (((g * v).array() <= h.array() + 1e-9).all())
      best = std::max(best, c.dot(v));
  } while (advance());
  return best;
}

double packing_by_enumeration(const Eigen::MatrixXd& p) {
  const int ny = static_cast<int>(p.rows());
  const int nx = static_cast<int>(p.cols());
  Eigen::MatrixXd g(ny + 2 * nx, nx);
  Eigen::VectorXd h(ny + 2 * nx);
  g.setZero();
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) g(y, x) = p(y, x) > 0.0 ? 1.0 : 0.0;
    h(y) = 1.0;
  }
  g.block(ny, 0, nx, nx).setIdentity();
  h.segment(ny, nx).setOnes();
  g.block(ny + nx, 0, nx, nx) = -Eigen::MatrixXd::Identity(nx, nx);
  h.segment(ny + nx, nx).setZero();
  return lp_vertex_maximum(g, h, Eigen::VectorXd::Ones(nx));
}

Eigen::MatrixXd random_stochastic(std::mt19937& rng, int ny, int nx) {
  // Weights in [0.3, 1] keep every normalized entry above 0.05 for ny <= 6.
  std::uniform_real_distribution<double> weight(0.3, 1.0);
  std::bernoulli_distribution pick(0.5);
  std::uniform_int_distribution<int> row(0, ny - 1);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(ny, nx);
  for (int x = 0; x < nx; ++x) {
    bool any = false;
    for (int y = 0; y < ny; ++y)
      if (pick(rng)) {
        p(y, x) = weight(rng);
        any = true;
      }
    if (!any) p(row(rng), x) = 1.0;
    p.col(x) /= p.col(x).sum();
  }
  return p;
}

zest::linalg::ComplexMatrix random_hermitian(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  zest::linalg::ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = zest::linalg::Complex(gauss(rng), gauss(rng));
  return zest::linalg::hermitian_part(a);
}

zest::linalg::ComplexMatrix random_unitary(std::mt19937& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  zest::linalg::ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = zest::linalg::Complex(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<zest::linalg::ComplexMatrix> qr(a);
  return qr.householderQ() * zest::linalg::ComplexMatrix::Identity(n, n);
}

}  // namespace zest::testsupport
