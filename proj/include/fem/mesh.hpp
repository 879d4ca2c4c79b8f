#pragma once
#include <array>
#include <string>
#include <vector>

namespace fem {

struct Vec2 {
  double x = 0, y = 0;
};

// Triangulation with full vertex/edge/triangle connectivity.
// Triangles are counterclockwise; edges store the lower vertex index first;
// tri_edges[t][m] is the edge opposite local vertex m of triangle t.
struct TriMesh {
  std::vector<Vec2> verts;
  std::vector<std::array<int, 3>> tris;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> tri_edges;
  std::vector<char> vert_boundary;
  std::vector<char> edge_boundary;
  std::vector<double> edge_len;
  std::vector<double> tri_area;

  int n_verts() const { return (int)verts.size(); }
  int n_tris() const { return (int)tris.size(); }
  int n_edges() const { return (int)edges.size(); }
  int n_interior_verts() const;
  int n_interior_edges() const;
  int n_boundary_verts() const { return n_verts() - n_interior_verts(); }
  int n_boundary_edges() const { return n_edges() - n_interior_edges(); }
};

// Unit square, n x n cells, each cell split into two triangles.
TriMesh build_square_mesh(int n);

// L-shaped domain [0,1]^2 minus the open upper-left quadrant, cell size 1/n
// (n even), each cell split into four triangles through its center.
TriMesh build_lshape_mesh(int n);

// Triangle domain with vertices (0,0), (1,0), (0,1), uniformly subdivided
// into n^2 congruent triangles.
TriMesh build_triangle_mesh(int n);

// Red refinement: each triangle split into four congruent children.
TriMesh refine_uniform(const TriMesh& m);

enum class Domain { Square, LShape, Triangle };

Domain parse_domain(const std::string& s);
std::string domain_name(Domain d);
TriMesh build_domain_mesh(Domain d, int n);

}  // namespace fem
