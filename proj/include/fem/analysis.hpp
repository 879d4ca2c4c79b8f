#pragma once
#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "fem/element.hpp"

namespace fem {

struct ExactSolution {
  std::function<double(double, double)> value;
  std::function<std::array<double, 2>(double, double)> gradient;
  std::function<std::array<double, 3>(double, double)> hessian;  // xx, xy, yy
};

struct ErrorNorms {
  double l2 = 0, h1 = 0, h2 = 0;  // L2 norm, broken H1/H2 seminorms
};

ErrorNorms error_norms(const TriMesh& m, const DofMap& d, ElementKind el,
                       const Eigen::VectorXd& coeffs, const ExactSolution& exact,
                       int quad_degree = 8);

// order_k = log2(e_{k-1}/e_k); first entry and nonpositive ratios absent
std::vector<std::optional<double>> order_known_exact(const std::vector<double>& errors);

// order_k = log2(|v_{k-2}-v_{k-1}| / |v_{k-1}-v_k|); needs three levels
std::vector<std::optional<double>> order_successive(const std::vector<double>& values);

}  // namespace fem
