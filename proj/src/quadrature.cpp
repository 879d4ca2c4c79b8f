#include "fem/quadrature.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace fem {

namespace {

// Gauss nodes/weights on [-1,1] from the monic three-term recurrence
// p_{k+1} = (x - a_k) p_k - b_k p_{k-1} via the Jacobi matrix.
void golub_welsch(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double mu0,
                  Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  int m = (int)a.size();
  Eigen::VectorXd off(m - 1 > 0 ? m - 1 : 0);
  for (int k = 0; k + 1 < m; ++k) off[k] = std::sqrt(b[k + 1]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(a, off);
  nodes = es.eigenvalues();
  weights.resize(m);
  for (int k = 0; k < m; ++k) {
    double v0 = es.eigenvectors()(0, k);
    weights[k] = mu0 * v0 * v0;
  }
}

void gauss_legendre(int m, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(m), b = Eigen::VectorXd::Zero(m);
  for (int k = 1; k < m; ++k) b[k] = (double)(k * k) / (4.0 * k * k - 1.0);
  golub_welsch(a, b, 2.0, x, w);
}

// Weight (1-x) on [-1,1].
void gauss_jacobi10(int m, Eigen::VectorXd& x, Eigen::VectorXd& w) {
  Eigen::VectorXd a(m), b = Eigen::VectorXd::Zero(m);
  for (int k = 0; k < m; ++k) a[k] = -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 3.0));
  for (int k = 1; k < m; ++k) {
    double d = 2.0 * k + 1.0;
    b[k] = k * (k + 1.0) / (d * d);
  }
  golub_welsch(a, b, 2.0, x, w);
}

}  // namespace

TriangleRule conical_rule(int m) {
  if (m < 1) throw std::invalid_argument("conical rule needs m >= 1");
  Eigen::VectorXd xg, wg, xj, wj;
  gauss_legendre(m, xg, wg);
  gauss_jacobi10(m, xj, wj);
  TriangleRule r;
  r.degree = 2 * m - 1;
  r.points.reserve(m * m);
  r.weights.reserve(m * m);
  // int_T f = int_0^1 (1-y) int_0^1 f((1-y)s, y) ds dy on the unit triangle;
  // y from the Jacobi(1,0) factor, s from Legendre; weights renormalized so
  // they sum to 1 over the triangle.
  for (int i = 0; i < m; ++i) {
    double y = 0.5 * (xj[i] + 1.0);
    double wy = wj[i] / 4.0;
    for (int j = 0; j < m; ++j) {
      double s = 0.5 * (xg[j] + 1.0);
      double ws = wg[j] / 2.0;
      double x = (1.0 - y) * s;
      r.points.push_back({1.0 - x - y, x, y});
      r.weights.push_back(2.0 * wy * ws);
    }
  }
  return r;
}

TriangleRule triangle_rule(int degree) {
  if (degree < 1 || degree > 10) throw std::invalid_argument("unsupported quadrature degree");
  return conical_rule((degree + 2) / 2);
}

}  // namespace fem
