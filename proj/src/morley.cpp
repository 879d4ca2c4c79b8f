#include "fem/morley.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace fem {

Vec2 global_edge_normal(const TriMesh& m, int e) {
  const Vec2& p = m.verts[m.edges[e][0]];
  const Vec2& q = m.verts[m.edges[e][1]];
  double tx = q.x - p.x, ty = q.y - p.y;
  double len = std::hypot(tx, ty);
  return {-ty / len, tx / len};
}

BasisEval eval_morley_basis(const std::array<Vec2, 3>& v,
                            const std::array<Vec2, 3>& edge_normals,
                            const std::vector<std::array<double, 3>>& pts) {
  Vec2 cen{(v[0].x + v[1].x + v[2].x) / 3, (v[0].y + v[1].y + v[2].y) / 3};
  // monomials 1, X, Y, X^2, XY, Y^2 in centroid-shifted coordinates
  auto mono = [&](const Vec2& p, double* out) {
    double X = p.x - cen.x, Y = p.y - cen.y;
    out[0] = 1; out[1] = X; out[2] = Y; out[3] = X * X; out[4] = X * Y; out[5] = Y * Y;
  };
  auto dmono = [&](const Vec2& p, double (*out)[2]) {
    double X = p.x - cen.x, Y = p.y - cen.y;
    out[0][0] = 0; out[0][1] = 0;
    out[1][0] = 1; out[1][1] = 0;
    out[2][0] = 0; out[2][1] = 1;
    out[3][0] = 2 * X; out[3][1] = 0;
    out[4][0] = Y; out[4][1] = X;
    out[5][0] = 0; out[5][1] = 2 * Y;
  };

  Eigen::Matrix<double, 6, 6> M;
  for (int m = 0; m < 3; ++m) {
    double row[6];
    mono(v[m], row);
    for (int c = 0; c < 6; ++c) M(m, c) = row[c];
  }
  for (int m = 0; m < 3; ++m) {
    int j = (m + 1) % 3, k = (m + 2) % 3;
    Vec2 mid{(v[j].x + v[k].x) / 2, (v[j].y + v[k].y) / 2};
    double dm[6][2];
    dmono(mid, dm);
    for (int c = 0; c < 6; ++c)
      M(3 + m, c) = dm[c][0] * edge_normals[m].x + dm[c][1] * edge_normals[m].y;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(M);
  if (!lu.isInvertible()) throw std::invalid_argument("degenerate morley element");
  Eigen::Matrix<double, 6, 6> C = lu.solve(Eigen::Matrix<double, 6, 6>::Identity());

  const int q = (int)pts.size();
  BasisEval ev;
  ev.val.resize(q, kMorleyLocal);
  ev.gx.resize(q, kMorleyLocal);
  ev.gy.resize(q, kMorleyLocal);
  ev.hxx.resize(q, kMorleyLocal);
  ev.hxy.resize(q, kMorleyLocal);
  ev.hyy.resize(q, kMorleyLocal);
  ev.lap.resize(q, kMorleyLocal);
  for (int p = 0; p < q; ++p) {
    const auto& b = pts[p];
    if (std::abs(b[0] + b[1] + b[2] - 1.0) > 1e-12)
      throw std::invalid_argument("barycentric coordinates must sum to 1");
    Vec2 x{b[0] * v[0].x + b[1] * v[1].x + b[2] * v[2].x,
           b[0] * v[0].y + b[1] * v[1].y + b[2] * v[2].y};
    double mq[6], dq[6][2];
    mono(x, mq);
    dmono(x, dq);
    for (int a = 0; a < 6; ++a) {
      double val = 0, gx = 0, gy = 0;
      for (int c = 0; c < 6; ++c) {
        val += mq[c] * C(c, a);
        gx += dq[c][0] * C(c, a);
        gy += dq[c][1] * C(c, a);
      }
      ev.val(p, a) = val;
      ev.gx(p, a) = gx;
      ev.gy(p, a) = gy;
      ev.hxx(p, a) = 2 * C(3, a);
      ev.hxy(p, a) = C(4, a);
      ev.hyy(p, a) = 2 * C(5, a);
      ev.lap(p, a) = 2 * C(3, a) + 2 * C(5, a);
    }
  }
  return ev;
}

BasisEval eval_morley_basis(const TriMesh& m, int t,
                            const std::vector<std::array<double, 3>>& pts) {
  std::array<Vec2, 3> v{m.verts[m.tris[t][0]], m.verts[m.tris[t][1]],
                        m.verts[m.tris[t][2]]};
  std::array<Vec2, 3> en;
  for (int i = 0; i < 3; ++i) en[i] = global_edge_normal(m, m.tri_edges[t][i]);
  return eval_morley_basis(v, en, pts);
}

DofMap build_morley_dofmap(const TriMesh& m) {
  std::vector<int> vdof(m.n_verts(), -1), edof(m.n_edges(), -1);
  int nv = 0;
  for (int v = 0; v < m.n_verts(); ++v)
    if (!m.vert_boundary[v]) vdof[v] = nv++;
  int ne = 0;
  for (int e = 0; e < m.n_edges(); ++e)
    if (!m.edge_boundary[e]) edof[e] = ne++;
  DofMap d;
  d.n_local = kMorleyLocal;
  d.n_dofs = nv + ne;
  d.loc2glob.assign((size_t)m.n_tris() * kMorleyLocal, -1);
  d.sign.assign((size_t)m.n_tris() * kMorleyLocal, 1.0);
  for (int t = 0; t < m.n_tris(); ++t) {
    for (int i = 0; i < 3; ++i) {
      if (vdof[m.tris[t][i]] >= 0)
        d.loc2glob[(size_t)t * kMorleyLocal + i] = vdof[m.tris[t][i]];
      int e = m.tri_edges[t][i];
      if (edof[e] >= 0) d.loc2glob[(size_t)t * kMorleyLocal + 3 + i] = nv + edof[e];
    }
  }
  return d;
}

}  // namespace fem
