#include "fem/analysis.hpp"

#include <cmath>

#include "fem/assembly.hpp"
#include "fem/quadrature.hpp"

namespace fem {

ErrorNorms error_norms(const TriMesh& m, const DofMap& d, ElementKind el,
                       const Eigen::VectorXd& coeffs, const ExactSolution& exact,
                       int quad_degree) {
  TriangleRule rule = triangle_rule(quad_degree);
  const int q = (int)rule.points.size();
  double e0 = 0, e1 = 0, e2 = 0;
  for (int t = 0; t < m.n_tris(); ++t) {
    BasisEval ev = eval_basis(m, t, el, rule.points);
    Eigen::VectorXd c(d.n_local);
    for (int a = 0; a < d.n_local; ++a) {
      int g = d.glob(t, a);
      c[a] = g >= 0 ? d.sgn(t, a) * coeffs[g] : 0.0;
    }
    Eigen::VectorXd uh = ev.val * c, ux = ev.gx * c, uy = ev.gy * c;
    Eigen::VectorXd uxx = ev.hxx * c, uxy = ev.hxy * c, uyy = ev.hyy * c;
    const Vec2& v0 = m.verts[m.tris[t][0]];
    const Vec2& v1 = m.verts[m.tris[t][1]];
    const Vec2& v2 = m.verts[m.tris[t][2]];
    for (int p = 0; p < q; ++p) {
      const auto& l = rule.points[p];
      double x = l[0] * v0.x + l[1] * v1.x + l[2] * v2.x;
      double y = l[0] * v0.y + l[1] * v1.y + l[2] * v2.y;
      double w = rule.weights[p] * m.tri_area[t];
      double dv = uh[p] - exact.value(x, y);
      auto g = exact.gradient(x, y);
      auto h = exact.hessian(x, y);
      double dx = ux[p] - g[0], dy = uy[p] - g[1];
      double dxx = uxx[p] - h[0], dxy = uxy[p] - h[1], dyy = uyy[p] - h[2];
      e0 += w * dv * dv;
      e1 += w * (dx * dx + dy * dy);
      e2 += w * (dxx * dxx + 2 * dxy * dxy + dyy * dyy);
    }
  }
  return {std::sqrt(e0), std::sqrt(e1), std::sqrt(e2)};
}

std::vector<std::optional<double>> order_known_exact(const std::vector<double>& errors) {
  std::vector<std::optional<double>> out(errors.size());
  for (size_t i = 1; i < errors.size(); ++i)
    if (errors[i - 1] > 0 && errors[i] > 0)
      out[i] = std::log2(errors[i - 1] / errors[i]);
  return out;
}

std::vector<std::optional<double>> order_successive(const std::vector<double>& values) {
  std::vector<std::optional<double>> out(values.size());
  for (size_t i = 2; i < values.size(); ++i) {
    double num = std::abs(values[i - 2] - values[i - 1]);
    double den = std::abs(values[i - 1] - values[i]);
    if (num > 0 && den > 0) out[i] = std::log2(num / den);
  }
  return out;
}

}  // namespace fem
