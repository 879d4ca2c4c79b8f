#pragma once
#include <array>
#include <vector>

namespace fem {

// Quadrature rule in barycentric coordinates; weights are normalized to sum
// to 1, so integrals are |T| * sum(w_i * f(p_i)).
struct TriangleRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;  // every bivariate polynomial up to this degree is exact
};

// Conical-product Gauss rule with m points per direction (m^2 total),
// exact to degree 2m-1. All weights positive.
TriangleRule conical_rule(int m);

// Rule exact at least to the requested degree, 1 <= degree <= 10.
TriangleRule triangle_rule(int degree);

}  // namespace fem
