#include "fem/assembly.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fem/b3.hpp"
#include "fem/errors.hpp"
#include "fem/morley.hpp"
#include "fem/quadrature.hpp"

namespace fem {

int fem_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("FEM_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && (unsigned)v < hw) return (int)v;
    if (v >= 1) return (int)v;
  }
  return (int)hw;
}

namespace {

template <class F>
void parallel_for(int n, F&& body) {
  int nt = std::min(fem_thread_count(), n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (int base; (base = next.fetch_add(64)) < n;) {
        int end = std::min(base + 64, n);
        for (int i = base; i < end; ++i) body(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lk(err_mu);
      if (!err) err = std::current_exception();
    }
  };
  std::vector<std::thread> ws;
  for (int w = 0; w < nt; ++w) ws.emplace_back(worker);
  for (auto& t : ws) t.join();
  if (err) std::rethrow_exception(err);
}

std::vector<Vec2> mapped_points(const TriMesh& m, int t, const TriangleRule& rule) {
  std::vector<Vec2> out(rule.points.size());
  const Vec2& a = m.verts[m.tris[t][0]];
  const Vec2& b = m.verts[m.tris[t][1]];
  const Vec2& c = m.verts[m.tris[t][2]];
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const auto& l = rule.points[q];
    out[q] = {l[0] * a.x + l[1] * b.x + l[2] * c.x,
              l[0] * a.y + l[1] * b.y + l[2] * c.y};
  }
  return out;
}

Eigen::MatrixXd local_form(const TriMesh& m, const DofMap& d, ElementKind el,
                           FormKind kind, const CoefficientField& c,
                           const TriangleRule& rule, int t) {
  BasisEval ev = eval_basis(m, t, el, rule.points);
  auto pts = mapped_points(m, t, rule);
  const int q = (int)rule.points.size();
  Eigen::VectorXd wc(q);
  for (int i = 0; i < q; ++i)
    wc[i] = rule.weights[i] * m.tri_area[t] * c(pts[i].x, pts[i].y);
  Eigen::MatrixXd loc;
  switch (kind) {
    case FormKind::Bilaplace:
      loc = ev.lap.transpose() * wc.asDiagonal() * ev.lap;
      break;
    case FormKind::Hessian:
      loc = ev.hxx.transpose() * wc.asDiagonal() * ev.hxx +
            2.0 * (ev.hxy.transpose() * wc.asDiagonal() * ev.hxy) +
            ev.hyy.transpose() * wc.asDiagonal() * ev.hyy;
      break;
    case FormKind::Grad:
      loc = ev.gx.transpose() * wc.asDiagonal() * ev.gx +
            ev.gy.transpose() * wc.asDiagonal() * ev.gy;
      break;
    case FormKind::Mass:
      loc = ev.val.transpose() * wc.asDiagonal() * ev.val;
      break;
    case FormKind::LaplaceMass: {
      Eigen::MatrixXd lv = ev.lap.transpose() * wc.asDiagonal() * ev.val;
      loc = lv + lv.transpose();
      break;
    }
  }
  Eigen::VectorXd s(d.n_local);
  for (int a = 0; a < d.n_local; ++a) s[a] = d.sgn(t, a);
  return s.asDiagonal() * loc * s.asDiagonal();
}

}  // namespace

BasisEval eval_basis(const TriMesh& m, int t, ElementKind el,
                     const std::vector<std::array<double, 3>>& pts) {
  if (el == ElementKind::B3) return eval_b3_basis(make_frame(m, t), pts);
  return eval_morley_basis(m, t, pts);
}

SpMat assemble_form(const TriMesh& m, const DofMap& d, ElementKind el, FormKind kind,
                    const CoefficientField& c, int quad_degree) {
  TriangleRule rule = triangle_rule(quad_degree);
  const int nt = m.n_tris(), nl = d.n_local;
  std::vector<Eigen::MatrixXd> blocks(nt);
  parallel_for(nt, [&](int t) { blocks[t] = local_form(m, d, el, kind, c, rule, t); });

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve((size_t)nt * nl * nl);
  for (int t = 0; t < nt; ++t)
    for (int a = 0; a < nl; ++a) {
      int ga = d.glob(t, a);
      if (ga < 0) continue;
      for (int b = 0; b < nl; ++b) {
        int gb = d.glob(t, b);
        if (gb >= 0) trips.emplace_back(ga, gb, blocks[t](a, b));
      }
    }
  SpMat M(d.n_dofs, d.n_dofs);
  M.setFromTriplets(trips.begin(), trips.end());
  finalize(M);
  return M;
}

SpMat assemble_bilaplace(const TriMesh& m, const DofMap& d, ElementKind el,
                         const CoefficientField& c, int quad_degree) {
  return assemble_form(m, d, el, FormKind::Bilaplace, c, quad_degree);
}
SpMat assemble_hessian(const TriMesh& m, const DofMap& d, ElementKind el,
                       const CoefficientField& c, int quad_degree) {
  return assemble_form(m, d, el, FormKind::Hessian, c, quad_degree);
}
SpMat assemble_grad(const TriMesh& m, const DofMap& d, ElementKind el, int quad_degree) {
  return assemble_form(m, d, el, FormKind::Grad, constant_coefficient(1.0), quad_degree);
}
SpMat assemble_mass(const TriMesh& m, const DofMap& d, ElementKind el,
                    const CoefficientField& c, int quad_degree) {
  return assemble_form(m, d, el, FormKind::Mass, c, quad_degree);
}
SpMat assemble_laplace_mass(const TriMesh& m, const DofMap& d, ElementKind el,
                            const CoefficientField& c, int quad_degree) {
  return assemble_form(m, d, el, FormKind::LaplaceMass, c, quad_degree);
}

Eigen::VectorXd assemble_load(const TriMesh& m, const DofMap& d, ElementKind el,
                              const std::function<double(double, double)>& f,
                              int quad_degree) {
  TriangleRule rule = triangle_rule(quad_degree);
  const int nt = m.n_tris(), nl = d.n_local;
  std::vector<Eigen::VectorXd> blocks(nt);
  parallel_for(nt, [&](int t) {
    BasisEval ev = eval_basis(m, t, el, rule.points);
    auto pts = mapped_points(m, t, rule);
    Eigen::VectorXd wf(rule.points.size());
    for (size_t q = 0; q < rule.points.size(); ++q)
      wf[q] = rule.weights[q] * m.tri_area[t] * f(pts[q].x, pts[q].y);
    Eigen::VectorXd loc = ev.val.transpose() * wf;
    for (int a = 0; a < nl; ++a) loc[a] *= d.sgn(t, a);
    blocks[t] = loc;
  });
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d.n_dofs);
  for (int t = 0; t < nt; ++t)
    for (int a = 0; a < nl; ++a) {
      int ga = d.glob(t, a);
      if (ga >= 0) b[ga] += blocks[t][a];
    }
  return b;
}

TepMatrices assemble_tep_matrices(const TriMesh& m, const DofMap& d, ElementKind el,
                                  const CoefficientField& n,
                                  std::optional<double> morley_alpha, int quad_degree) {
  // validate n > 1 at every quadrature point and find the sampled range
  TriangleRule rule = triangle_rule(quad_degree);
  double nmax = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < m.n_tris(); ++t)
    for (const auto& p : mapped_points(m, t, rule)) {
      double v = n(p.x, p.y);
      if (!(v > 1.0)) throw ValidationError("refraction index must satisfy n > 1");
      nmax = std::max(nmax, v);
    }
  bool cst = false;
  {
    auto r = coefficient_range(n, m);
    cst = (r[0] == r[1]);
  }
  CoefficientField inv{"1/(n-1)", [n](double x, double y) { return 1.0 / (n(x, y) - 1.0); }, cst};
  CoefficientField rat{"n/(n-1)",
                       [n](double x, double y) {
                         double v = n(x, y);
                         return v / (v - 1.0);
                       },
                       cst};
  TepMatrices out;
  if (el == ElementKind::Morley) {
    if (!morley_alpha) throw ValidationError("Morley scheme requires alpha");
    double a = *morley_alpha, a_s = 1.0 / (nmax - 1.0);
    if (!(a > 0 && a < a_s))
      throw ValidationError("alpha must lie in (0, " + std::to_string(a_s) + ")");
    CoefficientField shifted{
        "1/(n-1)-alpha",
        [n, a](double x, double y) { return 1.0 / (n(x, y) - 1.0) - a; }, cst};
    out.A = assemble_bilaplace(m, d, el, shifted, quad_degree) +
            SpMat(assemble_hessian(m, d, el, constant_coefficient(a), quad_degree));
    finalize(out.A);
  } else {
    out.A = assemble_bilaplace(m, d, el, inv, quad_degree);
  }
  out.B = assemble_laplace_mass(m, d, el, inv, quad_degree) -
          SpMat(assemble_grad(m, d, el, quad_degree));
  finalize(out.B);
  out.C = assemble_mass(m, d, el, rat, quad_degree);
  return out;
}

}  // namespace fem
