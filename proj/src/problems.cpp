#include "fem/problems.hpp"

#include <algorithm>
#include <cmath>

#include "fem/b3.hpp"
#include "fem/errors.hpp"
#include "fem/morley.hpp"

namespace fem {

namespace {

DofMap make_dofmap(const TriMesh& m, ElementKind el) {
  return el == ElementKind::B3 ? build_b3_dofmap(m) : build_morley_dofmap(m);
}

void require_positive(const CoefficientField& c, const TriMesh& m, const char* what) {
  if (coefficient_range(c, m)[0] <= 0)
    throw ValidationError(std::string(what) + " must be positive on the domain");
}

}  // namespace

SourceSolution solve_source(Domain dom, int n, const CoefficientField& delta,
                            const std::function<double(double, double)>& f,
                            const ExactSolution* exact, int quad_degree) {
  TriMesh mesh = build_domain_mesh(dom, n);
  require_positive(delta, mesh, "delta");
  DofMap d = build_b3_dofmap(mesh);
  SpMat K = assemble_bilaplace(mesh, d, ElementKind::B3, delta, quad_degree);
  Eigen::VectorXd rhs = assemble_load(mesh, d, ElementKind::B3, f, quad_degree);
  SourceSolution out;
  out.n = n;
  out.dofs = d.n_dofs;
  out.coeffs = solve_sparse(K, rhs);
  if (exact) {
    out.errors = error_norms(mesh, d, ElementKind::B3, out.coeffs, *exact, quad_degree);
    out.has_errors = true;
  }
  return out;
}

SpectrumSolution solve_bihar_evp(Domain dom, int n, const CoefficientField& delta,
                                 int k, ElementKind scheme, std::optional<double> alpha,
                                 double sigma, double tol, int max_iter, int quad_degree) {
  TriMesh mesh = build_domain_mesh(dom, n);
  require_positive(delta, mesh, "delta");
  DofMap d = make_dofmap(mesh, scheme);
  SpMat A;
  if (scheme == ElementKind::B3) {
    A = assemble_bilaplace(mesh, d, ElementKind::B3, delta, quad_degree);
  } else {
    if (!alpha) throw ValidationError("Morley scheme requires alpha");
    double a = *alpha;
    double dmin = coefficient_range(delta, mesh)[0];
    if (!(a > 0 && a < dmin))
      throw ValidationError("alpha must lie in (0, " + std::to_string(dmin) + ")");
    CoefficientField shifted{"delta-alpha",
                             [delta, a](double x, double y) { return delta(x, y) - a; },
                             delta.polynomial};
    A = assemble_hessian(mesh, d, ElementKind::Morley, constant_coefficient(a), quad_degree) +
        SpMat(assemble_bilaplace(mesh, d, ElementKind::Morley, shifted, quad_degree));
    finalize(A);
  }
  SpMat M = assemble_mass(mesh, d, scheme, constant_coefficient(1.0), quad_degree);
  SymEig eig = eig_sym_pencil(A, M, k, sigma, tol, max_iter);
  SpectrumSolution out;
  out.n = n;
  out.dofs = d.n_dofs;
  out.scheme = scheme == ElementKind::B3 ? "b3" : "morley";
  out.alpha = alpha;
  out.problem = "bihar";
  out.eigenvalues.assign(eig.values.data(), eig.values.data() + eig.values.size());
  out.residuals.assign(eig.residuals.data(), eig.residuals.data() + eig.residuals.size());
  out.vectors = eig.vectors;
  return out;
}

SpectrumSolution solve_tep(Domain dom, int n, const CoefficientField& nref, int k,
                           ElementKind scheme, std::optional<double> alpha,
                           double sigma, double tol, int max_iter, int quad_degree) {
  TriMesh mesh = build_domain_mesh(dom, n);
  DofMap d = make_dofmap(mesh, scheme);
  TepMatrices tm = assemble_tep_matrices(mesh, d, scheme, nref, alpha, quad_degree);
  SpMat G = assemble_grad(mesh, d, scheme, quad_degree);
  const int N = d.n_dofs;

  struct RealPair {
    double tau;
    Eigen::VectorXd x;
    double resid;
  };
  int discarded_negative = 0;
  auto attempt = [&](double sg) {
    PencilProblem p = qep_linearize(tm.A, tm.B, tm.C);
    p.sigma = sg;
    p.k = std::min(4 * k, 2 * N);
    p.tol = tol;
    p.max_iter = max_iter;
    std::vector<EigenPair> pairs = eig_gen_shift_invert(p);
    std::vector<RealPair> real;
    for (const auto& pr : pairs) {
      if (std::abs(pr.value.imag()) > 1e-8 * std::abs(pr.value)) continue;
      double tau = pr.value.real();
      if (tau < 0) ++discarded_negative;
      if (tau < 1e-6) continue;
      // rotate the complex eigenvector onto the real axis
      Eigen::VectorXcd p2 = pr.vector.tail(N);
      int imax = 0;
      for (int i = 1; i < N; ++i)
        if (std::abs(p2[i]) > std::abs(p2[imax])) imax = i;
      std::complex<double> phase = std::abs(p2[imax]) > 0 ? p2[imax] / std::abs(p2[imax])
                                                          : std::complex<double>(1, 0);
      Eigen::VectorXd x = (p2 / phase).real();
      real.push_back({tau, x, pr.residual});
    }
    std::sort(real.begin(), real.end(),
              [](const RealPair& a, const RealPair& b) { return a.tau < b.tau; });
    return real;
  };

  std::vector<RealPair> real = attempt(sigma);
  if ((int)real.size() < k && sigma != 4.0) {
    discarded_negative = 0;
    real = attempt(4.0);
  }

  SpectrumSolution out;
  out.n = n;
  out.dofs = N;
  out.scheme = scheme == ElementKind::B3 ? "b3" : "morley";
  out.alpha = alpha;
  out.problem = "tep";
  out.discarded_negative = discarded_negative;
  int kept = std::min((int)real.size(), k);
  out.vectors.resize(N, kept);
  for (int i = 0; i < kept; ++i) {
    double tau = real[i].tau;
    Eigen::VectorXd x = real[i].x;
    double e = x.dot(G * x);
    if (e > 0) x /= std::sqrt(e);  // discrete constraint B(u_h, u_h) = 1
    out.eigenvalues.push_back(tau);
    out.sqrt_values.push_back(std::sqrt(tau));
    out.residuals.push_back(real[i].resid);
    out.vectors.col(i) = x;
  }
  if (kept < k)
    out.status = "found " + std::to_string(kept) + " of " + std::to_string(k) +
                 " real eigenvalues near the shift";
  return out;
}

std::vector<SweepCell> morley_alpha_sweep(Domain dom, const std::vector<int>& ns,
                                          const CoefficientField& coeff,
                                          const std::vector<double>& alphas, int k,
                                          const std::string& problem, double sigma,
                                          double tol, int max_iter) {
  if (problem != "bihar" && problem != "tep")
    throw ValidationError("morley_alpha_sweep: problem must be bihar or tep");
  const bool bh = problem == "bihar";
  double t = tol > 0 ? tol : (bh ? 1e-9 : 1e-8);
  int mi = max_iter > 0 ? max_iter : (bh ? 250 : 300);
  std::vector<SweepCell> out;
  for (double a : alphas)
    for (int n : ns) {
      SweepCell cell;
      cell.alpha = a;
      cell.n = n;
      try {
        cell.sol = bh ? solve_bihar_evp(dom, n, coeff, k, ElementKind::Morley, a, sigma, t, mi)
                      : solve_tep(dom, n, coeff, k, ElementKind::Morley, a, sigma, t, mi);
        cell.sol.vectors.resize(0, 0);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
      }
      out.push_back(std::move(cell));
    }
  return out;
}

}  // namespace fem
