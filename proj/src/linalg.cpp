#include "fem/linalg.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace fem {

namespace {

void check_square_pair(const SpMat& A, const SpMat& B, const char* who) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ValidationError(std::string(who) + ": dimension mismatch");
}

// b - A*x with the accumulation in extended precision, so refinement keeps
// making progress once the double-precision residual hits its rounding floor
Eigen::VectorXd residual_ext(const SpMat& A, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& b) {
  Eigen::VectorXd r(b.size());
  for (int i = 0; i < A.outerSize(); ++i) {
    long double s = b[i];
    for (SpMat::InnerIterator it(A, i); it; ++it)
      s -= (long double)it.value() * (long double)x[it.col()];
    r[i] = (double)s;
  }
  return r;
}

}  // namespace

Eigen::VectorXd solve_sparse(const SpMat& A, const Eigen::VectorXd& b) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw ValidationError("solve_sparse: dimension mismatch");
  if (A.rows() == 0) return Eigen::VectorXd();
  SpMatCol Ac(A);
  Eigen::SparseLU<SpMatCol> lu;
  lu.compute(Ac);
  if (lu.info() != Eigen::Success)
    throw SolverError("solve_sparse: factorization failed (singular to tolerance)");
  Eigen::VectorXd x = lu.solve(b);
  double den = b.norm();
  Eigen::VectorXd r = residual_ext(A, x, b);
  for (int sweep = 0; sweep < 4 && den > 0 && r.norm() / den > 1e-10; ++sweep) {
    x += lu.solve(r);  // iterative refinement
    r = residual_ext(A, x, b);
  }
  if (den > 0 && !(r.norm() / den <= 1e-10)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", r.norm() / den);
    throw SolverError("solve_sparse: residual " + std::string(buf) + " exceeds 1e-10");
  }
  return x;
}

SymEig eig_sym_pencil(const SpMat& A, const SpMat& M, int k, double sigma,
                      double tol, int max_iter) {
  check_square_pair(A, M, "eig_sym_pencil");
  const int N = (int)A.rows();
  if (k < 1 || k > N) throw ValidationError("eig_sym_pencil: k out of range");

  SpMatCol K = SpMatCol(A) - sigma * SpMatCol(M);
  Eigen::SimplicialLDLT<SpMatCol> fac(K);
  if (fac.info() != Eigen::Success)
    throw SolverError("eig_sym_pencil: factorization of A - sigma*M failed; try another shift");

  const double normA1 = norm1(A);
  const int mmax = std::min(std::max(max_iter, k), N);
  const int m0 = std::min(std::max(2 * k + 10, 30), mmax);

  Eigen::MatrixXd V(N, mmax + 1), MV(N, mmax + 1);
  Eigen::VectorXd a(mmax), b(mmax);

  Eigen::VectorXd v = Eigen::VectorXd::Ones(N);
  Eigen::VectorXd mv = M * v;
  double nrm = std::sqrt(v.dot(mv));
  V.col(0) = v / nrm;
  MV.col(0) = mv / nrm;

  int next_dir = 0;
  int steps = 0;
  SymEig out;

  auto reorth = [&](Eigen::VectorXd& w, int cols) {
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd h = MV.leftCols(cols).transpose() * w;
      w -= V.leftCols(cols) * h;
    }
  };

  // Returns true when the k wanted pairs converged; fills `out`.
  auto converged = [&](int m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes;
    tes.computeFromTridiagonal(a.head(m), b.head(m - 1));
    if (tes.info() != Eigen::Success) return false;
    const Eigen::VectorXd& th = tes.eigenvalues();
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
      return std::abs(th[i]) > std::abs(th[j]);
    });
    int kk = std::min(k, m);
    if (kk < k) return false;
    Eigen::VectorXd vals(k), resid(k);
    Eigen::MatrixXd vecs(N, k);
    for (int i = 0; i < k; ++i) {
      double theta = th[idx[i]];
      if (std::abs(theta) < 1e-300) return false;
      double lam = sigma + 1.0 / theta;
      Eigen::VectorXd x = V.leftCols(m) * tes.eigenvectors().col(idx[i]);
      double xm = std::sqrt(x.dot(M * x));
      if (xm > 0) x /= xm;
      double r = (A * x - lam * (M * x)).norm() / (normA1 * x.norm());
      if (!(r <= tol)) return false;
      vals[i] = lam;
      vecs.col(i) = x;
      resid[i] = r;
    }
    std::vector<int> ord(k);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int i, int j) { return vals[i] < vals[j]; });
    out.values.resize(k);
    out.vectors.resize(N, k);
    out.residuals.resize(k);
    for (int i = 0; i < k; ++i) {
      out.values[i] = vals[ord[i]];
      out.vectors.col(i) = vecs.col(ord[i]);
      out.residuals[i] = resid[ord[i]];
    }
    out.iterations = m;
    return true;
  };

  bool exhausted = false;
  while (steps < mmax && !exhausted) {
    int j = steps;
    Eigen::VectorXd w = fac.solve(MV.col(j));
    double aj = w.dot(MV.col(j));
    a[j] = aj;
    w -= aj * V.col(j);
    if (j > 0) w -= b[j - 1] * V.col(j - 1);
    reorth(w, j + 1);
    Eigen::VectorXd mw = M * w;
    double bj = std::sqrt(std::max(0.0, w.dot(mw)));
    steps = j + 1;
    if (bj > 1e-12) {
      b[j] = bj;
      V.col(j + 1) = w / bj;
      MV.col(j + 1) = mw / bj;
    } else {
      // invariant subspace: splice in a fresh deterministic direction
      b[j] = 0.0;
      bool found = false;
      while (next_dir < N && !found) {
        w.setZero();
        w[next_dir++] = 1.0;
        reorth(w, j + 1);
        mw = M * w;
        double nn = std::sqrt(std::max(0.0, w.dot(mw)));
        if (nn > 1e-8) {
          V.col(j + 1) = w / nn;
          MV.col(j + 1) = mw / nn;
          found = true;
        }
      }
      if (!found) exhausted = true;  // full space spanned
    }
    if (steps >= 2 &&
        ((steps >= m0 && (steps - m0) % 10 == 0) || steps == mmax || exhausted))
      if (converged(steps)) return out;
  }
  throw SolverError("eig_sym_pencil: not converged after " + std::to_string(steps) +
                    " Lanczos steps (k=" + std::to_string(k) + ")");
}

PencilProblem qep_linearize(const SpMat& A, const SpMat& B, const SpMat& C) {
  check_square_pair(A, B, "qep_linearize");
  check_square_pair(A, C, "qep_linearize");
  const int N = (int)A.rows();
  std::vector<Eigen::Triplet<double>> tl, tr;
  tl.reserve(A.nonZeros() + B.nonZeros() + N);
  tr.reserve(C.nonZeros() + N);
  for (int o = 0; o < B.outerSize(); ++o)
    for (SpMat::InnerIterator it(B, o); it; ++it)
      tl.emplace_back((int)it.row(), (int)it.col(), -it.value());
  for (int o = 0; o < A.outerSize(); ++o)
    for (SpMat::InnerIterator it(A, o); it; ++it)
      tl.emplace_back((int)it.row(), (int)it.col() + N, -it.value());
  for (int i = 0; i < N; ++i) tl.emplace_back(N + i, i, 1.0);
  for (int o = 0; o < C.outerSize(); ++o)
    for (SpMat::InnerIterator it(C, o); it; ++it)
      tr.emplace_back((int)it.row(), (int)it.col(), it.value());
  for (int i = 0; i < N; ++i) tr.emplace_back(N + i, N + i, 1.0);

  PencilProblem p;
  p.L.resize(2 * N, 2 * N);
  p.L.setFromTriplets(tl.begin(), tl.end());
  finalize(p.L);
  p.R.resize(2 * N, 2 * N);
  p.R.setFromTriplets(tr.begin(), tr.end());
  finalize(p.R);
  p.from_qep = true;
  p.A = A;
  p.B = B;
  p.C = C;
  return p;
}

namespace {

Eigen::VectorXcd cplx_matvec(const SpMat& M, const Eigen::VectorXcd& x) {
  Eigen::VectorXd re = M * x.real().eval();
  Eigen::VectorXd im = M * x.imag().eval();
  return re + std::complex<double>(0, 1) * im;
}

}  // namespace

std::vector<EigenPair> eig_gen_shift_invert(const PencilProblem& p) {
  check_square_pair(p.L, p.R, "eig_gen_shift_invert");
  const int n = (int)p.L.rows();
  if (p.k < 1 || p.k > n) throw ValidationError("eig_gen_shift_invert: k out of range");

  Eigen::SparseLU<SpMatCol> fac;
  int N = 0;
  if (p.from_qep) {
    N = (int)p.A.rows();
    SpMatCol Q = SpMatCol(p.A) + p.sigma * SpMatCol(p.B) +
                 (p.sigma * p.sigma) * SpMatCol(p.C);
    fac.compute(Q);
  } else {
    SpMatCol S = SpMatCol(p.L) - p.sigma * SpMatCol(p.R);
    fac.compute(S);
  }
  if (fac.info() != Eigen::Success)
    throw SolverError("eig_gen_shift_invert: factorization at shift failed; try a different shift");

  const double nL1 = p.from_qep ? 0.0 : norm1(p.L);
  const double nR1 = p.from_qep ? 0.0 : norm1(p.R);
  const double nA1 = p.from_qep ? norm1(p.A) : 0.0;
  const double nB1 = p.from_qep ? norm1(p.B) : 0.0;
  const double nC1 = p.from_qep ? norm1(p.C) : 0.0;

  auto apply = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    if (!p.from_qep) return fac.solve((p.R * x).eval());
    Eigen::VectorXd w1 = x.head(N), w2 = x.tail(N);
    Eigen::VectorXd t = p.C * w1 + p.B * w2 + p.sigma * (p.C * w2);
    Eigen::VectorXd z2 = -fac.solve(t);
    Eigen::VectorXd out(2 * N);
    out.tail(N) = z2;
    out.head(N) = w2 + p.sigma * z2;
    return out;
  };

  auto residual = [&](std::complex<double> tau, const Eigen::VectorXcd& x) {
    if (p.from_qep) {
      Eigen::VectorXcd x2 = x.tail(N);
      double nx = x2.norm();
      if (nx == 0) return std::numeric_limits<double>::infinity();
      Eigen::VectorXcd r =
          cplx_matvec(p.A, x2) + tau * cplx_matvec(p.B, x2) + tau * tau * cplx_matvec(p.C, x2);
      double scale = nA1 + std::abs(tau) * nB1 + std::norm(tau) * nC1;
      return r.norm() / (scale * nx);
    }
    Eigen::VectorXcd r = cplx_matvec(p.L, x) - tau * cplx_matvec(p.R, x);
    return r.norm() / ((nL1 + std::abs(tau) * nR1) * x.norm());
  };

  const int mmax = std::min(std::max(p.max_iter, p.k), n);
  const int m0 = std::min(std::max(2 * p.k + 10, 30), mmax);
  Eigen::MatrixXd V(n, mmax + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(mmax + 1, mmax);
  Eigen::VectorXd v = p.start.size() ? p.start : Eigen::VectorXd::Ones(n);
  if (v.size() != n) throw ValidationError("eig_gen_shift_invert: start vector size");
  v.normalize();
  V.col(0) = v;

  std::vector<EigenPair> result;

  // Ritz extraction; returns true when the k nearest-sigma pairs pass tol.
  auto converged = [&](int m, bool final) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(H.topLeftCorner(m, m));
    if (es.info() != Eigen::Success) {
      if (final) throw SolverError("eig_gen_shift_invert: Hessenberg eigendecomposition failed");
      return false;
    }
    Eigen::VectorXcd mu = es.eigenvalues();
    std::vector<int> idx;
    for (int i = 0; i < m; ++i)
      if (std::abs(mu[i]) > 1e-14) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
      double ai = std::abs(mu[i]), aj = std::abs(mu[j]);
      if (ai != aj) return ai > aj;
      if (mu[i].real() != mu[j].real()) return mu[i].real() < mu[j].real();
      return mu[i].imag() < mu[j].imag();
    });
    if ((int)idx.size() < p.k) {
      if (final) throw SolverError("eig_gen_shift_invert: only " +
                                   std::to_string(idx.size()) + " finite eigenvalues found");
      return false;
    }
    int take = p.k;
    // never split a conjugate pair at the cut
    while (take < (int)idx.size()) {
      std::complex<double> last = mu[idx[take - 1]];
      if (std::abs(last.imag()) < 1e-300) break;
      bool mate = false;
      for (int i = 0; i < take; ++i)
        if (std::abs(mu[idx[i]] - std::conj(last)) <=
            1e-12 * (1.0 + std::abs(last))) {
          mate = true;
          break;
        }
      if (mate) break;
      ++take;
    }
    std::vector<EigenPair> cand;
    for (int i = 0; i < take; ++i) {
      std::complex<double> tau = p.sigma + 1.0 / mu[idx[i]];
      Eigen::VectorXcd x = V.leftCols(m) * es.eigenvectors().col(idx[i]);
      x /= x.norm();
      double r = residual(tau, x);
      if (!(r <= p.tol)) {
        if (final)
          throw SolverError("eig_gen_shift_invert: residual " + std::to_string(r) +
                            " at eigenvalue " + std::to_string(tau.real()) +
                            " after " + std::to_string(m) + " Arnoldi steps");
        return false;
      }
      cand.push_back({tau, x, r});
    }
    std::sort(cand.begin(), cand.end(), [&](const EigenPair& a, const EigenPair& b) {
      double da = std::abs(a.value - p.sigma), db = std::abs(b.value - p.sigma);
      if (da != db) return da < db;
      if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
      return a.value.imag() < b.value.imag();
    });
    result = std::move(cand);
    return true;
  };

  int steps = 0, next_dir = 0;
  bool exhausted = false;
  while (steps < mmax && !exhausted) {
    int j = steps;
    Eigen::VectorXd w = apply(V.col(j));
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
      w -= V.leftCols(j + 1) * h;
      H.col(j).head(j + 1) += h;
    }
    double beta = w.norm();
    steps = j + 1;
    if (beta > 1e-12 * std::max(1.0, H.col(j).head(j + 1).norm())) {
      H(j + 1, j) = beta;
      V.col(j + 1) = w / beta;
    } else {
      H(j + 1, j) = 0.0;
      bool found = false;
      while (next_dir < n && !found) {
        w.setZero(n);
        w[next_dir++] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
          Eigen::VectorXd h = V.leftCols(j + 1).transpose() * w;
          w -= V.leftCols(j + 1) * h;
        }
        double nn = w.norm();
        if (nn > 1e-8) {
          V.col(j + 1) = w / nn;
          found = true;
        }
      }
      if (!found) exhausted = true;
    }
    bool final = (steps == mmax) || exhausted;
    if ((steps >= m0 && (steps - m0) % 10 == 0) || final)
      if (converged(steps, final)) return result;
  }
  throw SolverError("eig_gen_shift_invert: not converged after " +
                    std::to_string(steps) + " Arnoldi steps");
}

std::vector<double> filter_real(const std::vector<EigenPair>& pairs, double rel_tol) {
  std::vector<double> out;
  for (const auto& p : pairs)
    if (std::abs(p.value.imag()) <= rel_tol * std::abs(p.value))
      out.push_back(p.value.real());
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd dense_sym_pencil_values(const SpMat& A, const SpMat& M) {
  Eigen::MatrixXd Ad(A), Md(M);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad, Md);
  if (es.info() != Eigen::Success)
    throw SolverError("dense_sym_pencil_values: eigendecomposition failed");
  return es.eigenvalues();
}

std::vector<std::complex<double>> dense_pencil_values(const SpMat& L, const SpMat& R) {
  Eigen::MatrixXd Ld(L), Rd(R);
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> es(Ld, Rd);
  if (es.info() != Eigen::Success)
    throw SolverError("dense_pencil_values: QZ failed");
  std::vector<std::complex<double>> out;
  double scale = std::max(1.0, Rd.cwiseAbs().maxCoeff());
  for (int i = 0; i < es.alphas().size(); ++i) {
    double beta = es.betas()[i];
    if (std::abs(beta) > 1e-12 * scale) out.push_back(es.alphas()[i] / beta);
  }
  std::sort(out.begin(), out.end(), [](std::complex<double> a, std::complex<double> b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace fem
