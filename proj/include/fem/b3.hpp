#pragma once
#include "fem/element.hpp"

namespace fem {

// Local ordering of the 12 cubic basis functions:
// [w1x, w1y, wP1, w2x, w2y, wP2, w3x, w3y, wP3, we1, we2, we3].
// Slot 3i+0/3i+1 are the x/y gradient functions of vertex i, 3i+2 the
// vertex-patch function, 9+i the function of edge i.
inline constexpr int kB3Local = 12;

// Bubble correction coefficients (alpha, beta) per local function: the field
// phi_tilde + (alpha,beta)*phi_T is curl-free, with phi_T the elementwise
// quadratic lambda1^2+lambda2^2+lambda3^2-2/3.
struct BubbleCoeffs {
  std::array<double, 2> x[3], y[3], e[3], P[3];
};

BubbleCoeffs bubble_coefficients(const BaryFrame& f);

// Uncorrected generating field phi_tilde of local function `slot` at a
// barycentric point.
std::array<double, 2> b3_raw_field(const BaryFrame& f, int slot,
                                   const std::array<double, 3>& bary);

// Corrected field phi_tilde + (alpha,beta)*phi_T; equals the gradient of the
// corresponding basis function.
std::array<double, 2> b3_corrected_field(const BaryFrame& f, int slot,
                                         const std::array<double, 3>& bary);

double phi_bubble(const std::array<double, 3>& bary);

BasisEval eval_b3_basis(const BaryFrame& f,
                        const std::vector<std::array<double, 3>>& pts);

// 3 dofs per interior vertex (x, y, patch) then 1 per interior edge. The edge
// function is odd in the edge tangent, so the triangle whose cyclic direction
// disagrees with the stored low->high edge direction carries sign -1.
DofMap build_b3_dofmap(const TriMesh& m);

}  // namespace fem
