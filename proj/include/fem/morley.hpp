#pragma once
#include "fem/element.hpp"

namespace fem {

inline constexpr int kMorleyLocal = 6;

// Unit normal of edge e, fixed globally as the 90 degree CCW rotation of the
// low->high index tangent. Both triangles sharing an edge see the same normal,
// so the mean-normal-derivative dofs need no orientation signs.
Vec2 global_edge_normal(const TriMesh& m, int e);

// Quadratic basis dual to [value at vertex 0..2, dn at edge midpoint 0..2]
// with the supplied edge normals (edge m opposite vertex m).
BasisEval eval_morley_basis(const std::array<Vec2, 3>& v,
                            const std::array<Vec2, 3>& edge_normals,
                            const std::vector<std::array<double, 3>>& pts);
BasisEval eval_morley_basis(const TriMesh& m, int t,
                            const std::vector<std::array<double, 3>>& pts);

// 1 dof per interior vertex, then 1 per interior edge; all signs +1.
DofMap build_morley_dofmap(const TriMesh& m);

}  // namespace fem
