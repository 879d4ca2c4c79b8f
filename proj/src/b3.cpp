#include "fem/b3.hpp"

#include <cmath>
#include <stdexcept>

namespace fem {

namespace {

void check_nondegenerate(const BaryFrame& f) {
  double diam2 = std::max({f.e2[0], f.e2[1], f.e2[2]});
  if (!(f.area > 1e-14 * diam2)) throw std::invalid_argument("degenerate triangle");
}

inline double b1(double t) { return t * t * t / 3 - t * t + 2 * t / 3; }
inline double db1(double t) { return t * t - 2 * t + 2.0 / 3; }
inline double d2b1(double t) { return 2 * t - 2; }
inline double b2(double t) { return 2 * t * t * t / 3 - t * t + t / 3; }
inline double db2(double t) { return 2 * t * t - 2 * t + 1.0 / 3; }
inline double d2b2(double t) { return 4 * t - 2; }
inline double b3(double t) { return -2 * t * t * t / 3 + t * t - t / 6; }
inline double db3(double t) { return -2 * t * t + 2 * t - 1.0 / 6; }
inline double d2b3(double t) { return -4 * t + 2; }

}  // namespace

BaryFrame make_frame(const Vec2& v0, const Vec2& v1, const Vec2& v2) {
  const Vec2 v[3] = {v0, v1, v2};
  BaryFrame f;
  double two_a = (v1.x - v0.x) * (v2.y - v0.y) - (v2.x - v0.x) * (v1.y - v0.y);
  f.area = 0.5 * two_a;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    f.xi[i] = v[j].x - v[k].x;
    f.eta[i] = v[j].y - v[k].y;
    f.e2[i] = f.xi[i] * f.xi[i] + f.eta[i] * f.eta[i];
    f.grad_lambda[i] = {f.eta[i] / two_a, -f.xi[i] / two_a};
  }
  check_nondegenerate(f);
  return f;
}

BaryFrame make_frame(const TriMesh& m, int t) {
  return make_frame(m.verts[m.tris[t][0]], m.verts[m.tris[t][1]], m.verts[m.tris[t][2]]);
}

BubbleCoeffs bubble_coefficients(const BaryFrame& f) {
  check_nondegenerate(f);
  BubbleCoeffs c;
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    const auto& gi = f.grad_lambda[i];
    const auto& gj = f.grad_lambda[j];
    const auto& gk = f.grad_lambda[k];
    double den = gk[1] * gj[0] - gk[0] * gj[1];
    c.x[i] = {(gk[0] - gj[0]) * (gk[1] + gj[1]) / den,
              (gk[1] - gj[1]) * (gk[1] + gj[1]) / den};
    c.y[i] = {(gj[0] - gk[0]) * (gj[0] + gk[0]) / den,
              (gj[1] - gk[1]) * (gj[0] + gk[0]) / den};
    c.e[i] = {gi[0] * 6 * f.area / f.e2[i], gi[1] * 6 * f.area / f.e2[i]};
    double dd = gj[0] * gk[0] + gj[1] * gk[1];
    c.P[i] = {(-12 * f.area * dd * (gk[0] / f.e2[k] + gj[0] / f.e2[j]) -
               3 / f.area * (gj[0] + gk[0])) /
                  (2 * den),
              (-12 * f.area * dd * (gk[1] / f.e2[k] + gj[1] / f.e2[j]) -
               3 / f.area * (gj[1] + gk[1])) /
                  (2 * den)};
  }
  return c;
}

std::array<double, 2> b3_raw_field(const BaryFrame& f, int slot,
                                   const std::array<double, 3>& bary) {
  if (slot >= 9) {
    // edge field: 6 lam_j lam_k / |e|^2 rotated cyclic tangent (v_k - v_j)
    int i = slot - 9, j = (i + 1) % 3, k = (i + 2) % 3;
    double tx = -f.xi[i], ty = -f.eta[i];  // tangent * |e|, direction j->k
    double s = 6 * bary[j] * bary[k] / f.e2[i];
    return {-ty * s, tx * s};
  }
  int i = slot / 3, kind = slot % 3, j = (i + 1) % 3, k = (i + 2) % 3;
  if (kind == 0 || kind == 1) {
    double s = bary[i] - 3 * bary[i] * bary[j] - 3 * bary[i] * bary[k];
    return kind == 0 ? std::array<double, 2>{s, 0.0} : std::array<double, 2>{0.0, s};
  }
  // patch field: tangents of the two edges meeting at vertex i, both pointing
  // away from it; e_k joins (i,j) so away-from-i is v_j - v_i = -(xi_k, eta_k),
  // e_j joins (k,i) so away-from-i is v_k - v_i = (xi_j, eta_j).
  double sa = 6 * bary[i] * bary[j] / f.e2[k];
  double sb = 6 * bary[i] * bary[k] / f.e2[j];
  return {-f.xi[k] * sa + f.xi[j] * sb, -f.eta[k] * sa + f.eta[j] * sb};
}

double phi_bubble(const std::array<double, 3>& b) {
  return b[0] * b[0] + b[1] * b[1] + b[2] * b[2] - 2.0 / 3.0;
}

std::array<double, 2> b3_corrected_field(const BaryFrame& f, int slot,
                                         const std::array<double, 3>& bary) {
  BubbleCoeffs c = bubble_coefficients(f);
  const std::array<double, 2>* ab;
  if (slot >= 9) {
    ab = &c.e[slot - 9];
  } else {
    int i = slot / 3, kind = slot % 3;
    ab = kind == 0 ? &c.x[i] : kind == 1 ? &c.y[i] : &c.P[i];
  }
  auto raw = b3_raw_field(f, slot, bary);
  double pt = phi_bubble(bary);
  return {raw[0] + (*ab)[0] * pt, raw[1] + (*ab)[1] * pt};
}

BasisEval eval_b3_basis(const BaryFrame& f,
                        const std::vector<std::array<double, 3>>& pts) {
  check_nondegenerate(f);
  const int q = (int)pts.size();
  BasisEval ev;
  ev.val.resize(q, kB3Local);
  ev.gx.resize(q, kB3Local);
  ev.gy.resize(q, kB3Local);
  ev.hxx.resize(q, kB3Local);
  ev.hxy.resize(q, kB3Local);
  ev.hyy.resize(q, kB3Local);
  ev.lap.resize(q, kB3Local);

  for (int p = 0; p < q; ++p) {
    const auto& b = pts[p];
    if (std::abs(b[0] + b[1] + b[2] - 1.0) > 1e-12)
      throw std::invalid_argument("barycentric coordinates must sum to 1");
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      double u = b[j], v = b[k];
      const auto& gj = f.grad_lambda[j];
      const auto& gk = f.grad_lambda[k];
      double gjj = gj[0] * gj[0] + gj[1] * gj[1];
      double gjk = gj[0] * gk[0] + gj[1] * gk[1];
      double gkk = gk[0] * gk[0] + gk[1] * gk[1];

      auto put = [&](int slot, double P, double Pu, double Pv, double Puu,
                     double Puv, double Pvv) {
        ev.val(p, slot) = P;
        ev.gx(p, slot) = Pu * gj[0] + Pv * gk[0];
        ev.gy(p, slot) = Pu * gj[1] + Pv * gk[1];
        ev.hxx(p, slot) = Puu * gj[0] * gj[0] + 2 * Puv * gj[0] * gk[0] + Pvv * gk[0] * gk[0];
        ev.hxy(p, slot) = Puu * gj[0] * gj[1] + Puv * (gj[0] * gk[1] + gk[0] * gj[1]) +
                          Pvv * gk[0] * gk[1];
        ev.hyy(p, slot) = Puu * gj[1] * gj[1] + 2 * Puv * gj[1] * gk[1] + Pvv * gk[1] * gk[1];
        ev.lap(p, slot) = Puu * gjj + 2 * Puv * gjk + Pvv * gkk;
      };

      // gradient-type brackets
      double A = b1(u) + b2(v) + 2 * u * u * v + u * v * v - 2 * u * v;
      double Au = db1(u) + 4 * u * v + v * v - 2 * v;
      double Av = db2(v) + 2 * u * u + 2 * u * v - 2 * u;
      double Auu = d2b1(u) + 4 * v, Auv = 4 * u + 2 * v - 2, Avv = d2b2(v) + 2 * u;
      double B = b2(u) + b1(v) + 2 * u * v * v + u * u * v - 2 * u * v;
      double Bu = db2(u) + 2 * v * v + 2 * u * v - 2 * v;
      double Bv = db1(v) + 4 * u * v + u * u - 2 * u;
      double Buu = d2b2(u) + 2 * v, Buv = 4 * v + 2 * u - 2, Bvv = d2b1(v) + 4 * u;
      put(3 * i, -f.xi[k] * A + f.xi[j] * B, -f.xi[k] * Au + f.xi[j] * Bu,
          -f.xi[k] * Av + f.xi[j] * Bv, -f.xi[k] * Auu + f.xi[j] * Buu,
          -f.xi[k] * Auv + f.xi[j] * Buv, -f.xi[k] * Avv + f.xi[j] * Bvv);
      put(3 * i + 1, -f.eta[k] * A + f.eta[j] * B, -f.eta[k] * Au + f.eta[j] * Bu,
          -f.eta[k] * Av + f.eta[j] * Bv, -f.eta[k] * Auu + f.eta[j] * Buu,
          -f.eta[k] * Auv + f.eta[j] * Buv, -f.eta[k] * Avv + f.eta[j] * Bvv);

      // vertex-patch function
      double s = -3 * (f.eta[j] * f.eta[k] + f.xi[j] * f.xi[k]);
      double D = s * (b2(u) / f.e2[j] + b2(v) / f.e2[k]) +
                 6 * (b3(u) + b3(v) + u * v - u * u * v - u * v * v) - 1;
      double Du = s * db2(u) / f.e2[j] + 6 * (db3(u) + v - 2 * u * v - v * v);
      double Dv = s * db2(v) / f.e2[k] + 6 * (db3(v) + u - u * u - 2 * u * v);
      double Duu = s * d2b2(u) / f.e2[j] + 6 * (d2b3(u) - 2 * v);
      double Duv = 6 * (1 - 2 * u - 2 * v);
      double Dvv = s * d2b2(v) / f.e2[k] + 6 * (d2b3(v) - 2 * u);
      put(3 * i + 2, D, Du, Dv, Duu, Duv, Dvv);

      // edge function
      double ce = -6 * f.area / f.e2[i];
      double C = ce * (b2(u) + b2(v) + 2 * u * u * v + 2 * u * v * v - 2 * u * v);
      double Cu = ce * (db2(u) + 4 * u * v + 2 * v * v - 2 * v);
      double Cv = ce * (db2(v) + 2 * u * u + 4 * u * v - 2 * u);
      double Cuu = ce * (d2b2(u) + 4 * v), Cuv = ce * (4 * u + 4 * v - 2),
             Cvv = ce * (d2b2(v) + 4 * u);
      put(9 + i, C, Cu, Cv, Cuu, Cuv, Cvv);
    }
  }
  return ev;
}

DofMap build_b3_dofmap(const TriMesh& m) {
  std::vector<int> vdof(m.n_verts(), -1), edof(m.n_edges(), -1);
  int nv = 0;
  for (int v = 0; v < m.n_verts(); ++v)
    if (!m.vert_boundary[v]) vdof[v] = nv++;
  int ne = 0;
  for (int e = 0; e < m.n_edges(); ++e)
    if (!m.edge_boundary[e]) edof[e] = ne++;
  DofMap d;
  d.n_local = kB3Local;
  d.n_dofs = 3 * nv + ne;
  d.loc2glob.assign((size_t)m.n_tris() * kB3Local, -1);
  d.sign.assign((size_t)m.n_tris() * kB3Local, 1.0);
  for (int t = 0; t < m.n_tris(); ++t) {
    for (int i = 0; i < 3; ++i) {
      int v = m.tris[t][i];
      if (vdof[v] >= 0)
        for (int c = 0; c < 3; ++c)
          d.loc2glob[(size_t)t * kB3Local + 3 * i + c] = 3 * vdof[v] + c;
      int e = m.tri_edges[t][i];
      if (edof[e] >= 0)
        d.loc2glob[(size_t)t * kB3Local + 9 + i] = 3 * nv + edof[e];
      if (m.tris[t][(i + 1) % 3] != m.edges[e][0])
        d.sign[(size_t)t * kB3Local + 9 + i] = -1.0;
    }
  }
  return d;
}

}  // namespace fem
