#pragma once
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "fem/mesh.hpp"

namespace fem {

// Scalar coefficient delta(x) or n(x). `polynomial` marks fields integrated
// exactly by the default quadrature degree.
struct CoefficientField {
  std::string name;
  std::function<double(double, double)> fn;
  bool polynomial = true;
  double operator()(double x, double y) const { return fn(x, y); }
};

// Presets: one -> 1, delta_lin/n_lin -> 8+x1-x2, delta_rad -> sqrt(x1^2+x2^2)+1,
// n16 -> 16, n24 -> 24, n_quad -> 18+x1^2+x2^2. Unknown name throws.
CoefficientField coefficient_preset(const std::string& name);
bool is_coefficient_preset(const std::string& name);
std::vector<std::string> coefficient_preset_names();

CoefficientField constant_coefficient(double c);

// sum of c * x^i * y^j terms given as (c, i, j); powers must be nonneg integers
CoefficientField poly_coefficient(const std::vector<std::array<double, 3>>& terms);

// min/max sampled at vertices, edge midpoints and centroids; exact for the
// affine presets and for radially monotone fields on these domains.
std::array<double, 2> coefficient_range(const CoefficientField& c, const TriMesh& m);

}  // namespace fem
