#pragma once
#include <Eigen/Dense>
#include <array>
#include <vector>

#include "fem/mesh.hpp"

namespace fem {

// Per-triangle geometric data shared by the element evaluators:
// xi_i = x_j - x_k, eta_i = y_j - y_k under the cyclic ordering (i,j,k),
// grad_lambda_i = (eta_i, -xi_i) / (2|T|), e2_i = |e_i|^2 for the edge
// opposite vertex i.
struct BaryFrame {
  std::array<double, 3> xi, eta, e2;
  std::array<std::array<double, 2>, 3> grad_lambda;
  double area = 0;
};

BaryFrame make_frame(const Vec2& v0, const Vec2& v1, const Vec2& v2);
BaryFrame make_frame(const TriMesh& m, int t);

// Values and derivatives of all local basis functions at a batch of points;
// one column per local function. lap is contracted independently of the
// Hessian entries so trace consistency is a real check.
struct BasisEval {
  Eigen::MatrixXd val, gx, gy, hxx, hxy, hyy, lap;
  int n_points() const { return (int)val.rows(); }
  int n_funcs() const { return (int)val.cols(); }
};

// Global index assignment. loc2glob is -1 for slots clamped by the boundary
// conditions; sign carries the +-1 orientation factor applied to the local
// function when it is glued into the global one.
struct DofMap {
  int n_dofs = 0;
  int n_local = 0;
  std::vector<int> loc2glob;
  std::vector<double> sign;
  int glob(int t, int a) const { return loc2glob[(size_t)t * n_local + a]; }
  double sgn(int t, int a) const { return sign[(size_t)t * n_local + a]; }
};

enum class ElementKind { B3, Morley };

}  // namespace fem
