#pragma once
#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "fem/coefficient.hpp"
#include "fem/element.hpp"
#include "fem/sparse.hpp"

namespace fem {

// thread cap from FEM_THREADS (>=1), default hardware concurrency
int fem_thread_count();

// basis evaluation on triangle t, dofmap signs not applied
BasisEval eval_basis(const TriMesh& m, int t, ElementKind el,
                     const std::vector<std::array<double, 3>>& pts);

enum class FormKind { Bilaplace, Hessian, Grad, Mass, LaplaceMass };

// M_ij = sum_T int_T c * prod(xi_i, xi_j) with prod per kind:
//   Bilaplace   lap*lap
//   Hessian     full Hessian contraction
//   Grad        grad.grad
//   Mass        val*val
//   LaplaceMass lap_i*val_j + val_i*lap_j (symmetrized; caller subtracts Grad
//               to obtain the mixed form)
SpMat assemble_form(const TriMesh& m, const DofMap& d, ElementKind el, FormKind kind,
                    const CoefficientField& c, int quad_degree = 8);

SpMat assemble_bilaplace(const TriMesh& m, const DofMap& d, ElementKind el,
                         const CoefficientField& c, int quad_degree = 8);
SpMat assemble_hessian(const TriMesh& m, const DofMap& d, ElementKind el,
                       const CoefficientField& c, int quad_degree = 8);
SpMat assemble_grad(const TriMesh& m, const DofMap& d, ElementKind el,
                    int quad_degree = 8);
SpMat assemble_mass(const TriMesh& m, const DofMap& d, ElementKind el,
                    const CoefficientField& c, int quad_degree = 8);
SpMat assemble_laplace_mass(const TriMesh& m, const DofMap& d, ElementKind el,
                            const CoefficientField& c, int quad_degree = 8);

Eigen::VectorXd assemble_load(const TriMesh& m, const DofMap& d, ElementKind el,
                              const std::function<double(double, double)>& f,
                              int quad_degree = 8);

struct TepMatrices {
  SpMat A, B, C;
};

// A = bilaplace(1/(n-1))            (Morley: bilaplace(1/(n-1)-alpha) + hessian(alpha))
// B = laplace_mass(1/(n-1)) - grad
// C = mass(n/(n-1))
// Throws ValidationError if n <= 1 at any sampled point, or if a Morley alpha
// is outside (0, 1/(max n - 1)).
TepMatrices assemble_tep_matrices(const TriMesh& m, const DofMap& d, ElementKind el,
                                  const CoefficientField& n,
                                  std::optional<double> morley_alpha = {},
                                  int quad_degree = 8);

}  // namespace fem
