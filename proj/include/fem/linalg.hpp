#pragma once
#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fem/errors.hpp"
#include "fem/sparse.hpp"

namespace fem {

struct EigenPair {
  std::complex<double> value;
  Eigen::VectorXcd vector;
  double residual = 0;
};

struct SymEig {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXd vectors;   // M-orthonormal columns
  Eigen::VectorXd residuals;
  int iterations = 0;
};

// Direct sparse solve; relative residual ||Ax-b||/||b|| <= 1e-10 enforced.
Eigen::VectorXd solve_sparse(const SpMat& A, const Eigen::VectorXd& b);

// k eigenvalues of A x = lambda M x nearest sigma (A, M symmetric, M SPD,
// A - sigma M definite for the factorization). Shift-invert Lanczos in the
// M inner product with full reorthogonalization; deterministic all-ones start.
SymEig eig_sym_pencil(const SpMat& A, const SpMat& M, int k, double sigma = 1.0,
                      double tol = 1e-9, int max_iter = 250);

// Generalized pencil L x = tau R x. When built by qep_linearize the A, B, C
// blocks are kept so the shift-invert operator factors only the N x N
// Q(sigma) = A + sigma B + sigma^2 C instead of the 2N x 2N pencil.
struct PencilProblem {
  SpMat L, R;
  double sigma = 1.0;
  int k = 6;
  double tol = 1e-8;
  int max_iter = 300;
  Eigen::VectorXd start;  // empty -> all-ones
  bool from_qep = false;
  SpMat A, B, C;
};

// (A + tau B + tau^2 C) x = 0 as the pencil [[-B,-A],[I,0]] z = tau [[C,0],[0,I]] z
// with z = (tau x, x); the trailing block of each eigenvector solves the QEP.
PencilProblem qep_linearize(const SpMat& A, const SpMat& B, const SpMat& C);

// k eigenvalues nearest sigma via shift-invert Arnoldi; conjugate-closed,
// deterministic. Residual is the QEP residual for from_qep problems, else the
// pencil residual ||(L - tau R) x|| / ((||L||_1 + |tau| ||R||_1) ||x||).
std::vector<EigenPair> eig_gen_shift_invert(const PencilProblem& p);

// keep |Im tau| <= rel_tol*|tau|; real parts sorted ascending, duplicates kept
std::vector<double> filter_real(const std::vector<EigenPair>& pairs,
                                double rel_tol = 1e-8);

// dense reference paths (intended for N <= 600)
Eigen::VectorXd dense_sym_pencil_values(const SpMat& A, const SpMat& M);
std::vector<std::complex<double>> dense_pencil_values(const SpMat& L, const SpMat& R);

}  // namespace fem
