#include "fem/mesh.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace fem {

int TriMesh::n_interior_verts() const {
  int c = 0;
  for (char b : vert_boundary) c += !b;
  return c;
}

int TriMesh::n_interior_edges() const {
  int c = 0;
  for (char b : edge_boundary) c += !b;
  return c;
}

namespace {

// Builds edges, incidence, boundary flags and metric data; validates
// orientation. Edge keys are (min,max) vertex pairs so edge storage is
// orientation-free; per-element conventions live in the element code.
void finalize(TriMesh& m) {
  const int nt = m.n_tris();
  m.tri_edges.assign(nt, {-1, -1, -1});
  std::map<std::array<int, 2>, int> edge_id;
  std::vector<int> incidence;
  for (int t = 0; t < nt; ++t) {
    const auto& tri = m.tris[t];
    for (int a = 0; a < 3; ++a) {
      int p = tri[(a + 1) % 3], q = tri[(a + 2) % 3];
      std::array<int, 2> key{std::min(p, q), std::max(p, q)};
      auto it = edge_id.find(key);
      int e;
      if (it == edge_id.end()) {
        e = (int)m.edges.size();
        edge_id.emplace(key, e);
        m.edges.push_back(key);
        incidence.push_back(0);
      } else {
        e = it->second;
      }
      m.tri_edges[t][a] = e;
      incidence[e]++;
    }
  }
  m.edge_boundary.assign(m.n_edges(), 0);
  m.vert_boundary.assign(m.n_verts(), 0);
  for (int e = 0; e < m.n_edges(); ++e) {
    if (incidence[e] > 2) throw std::invalid_argument("edge shared by >2 triangles");
    if (incidence[e] == 1) {
      m.edge_boundary[e] = 1;
      m.vert_boundary[m.edges[e][0]] = 1;
      m.vert_boundary[m.edges[e][1]] = 1;
    }
  }
  m.edge_len.resize(m.n_edges());
  for (int e = 0; e < m.n_edges(); ++e) {
    const Vec2& a = m.verts[m.edges[e][0]];
    const Vec2& b = m.verts[m.edges[e][1]];
    m.edge_len[e] = std::hypot(b.x - a.x, b.y - a.y);
  }
  m.tri_area.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const Vec2& a = m.verts[m.tris[t][0]];
    const Vec2& b = m.verts[m.tris[t][1]];
    const Vec2& c = m.verts[m.tris[t][2]];
    double two_a = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    if (two_a <= 0) throw std::invalid_argument("triangle not counterclockwise");
    m.tri_area[t] = 0.5 * two_a;
  }
}

}  // namespace

TriMesh build_square_mesh(int n) {
  if (n < 1) throw std::invalid_argument("square mesh needs n >= 1");
  TriMesh m;
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      m.verts.push_back({(double)i / n, (double)j / n});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      m.tris.push_back({a, b, d});
      m.tris.push_back({b, c, d});
    }
  finalize(m);
  return m;
}

TriMesh build_lshape_mesh(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("lshape mesh needs even n >= 2");
  TriMesh m;
  std::map<std::pair<int, int>, int> grid;  // keys in units of 1/(2n)
  auto getv = [&](int i2, int j2) {
    auto it = grid.find({i2, j2});
    if (it != grid.end()) return it->second;
    int id = (int)m.verts.size();
    grid.emplace(std::make_pair(i2, j2), id);
    m.verts.push_back({i2 / (2.0 * n), j2 / (2.0 * n)});
    return id;
  };
  auto keep = [n](int i, int j) { return !(i < n / 2 && j >= n / 2); };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!keep(i, j)) continue;
      int a = getv(2 * i, 2 * j), b = getv(2 * i + 2, 2 * j);
      int c = getv(2 * i + 2, 2 * j + 2), d = getv(2 * i, 2 * j + 2);
      int o = getv(2 * i + 1, 2 * j + 1);
      m.tris.push_back({a, b, o});
      m.tris.push_back({b, c, o});
      m.tris.push_back({c, d, o});
      m.tris.push_back({d, a, o});
    }
  finalize(m);
  return m;
}

TriMesh build_triangle_mesh(int n) {
  if (n < 1) throw std::invalid_argument("triangle mesh needs n >= 1");
  TriMesh m;
  std::vector<std::vector<int>> row(n + 1);
  for (int j = 0; j <= n; ++j) {
    row[j].resize(n + 1 - j);
    for (int i = 0; i <= n - j; ++i) {
      row[j][i] = (int)m.verts.size();
      m.verts.push_back({(double)i / n, (double)j / n});
    }
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n - j; ++i) {
      m.tris.push_back({row[j][i], row[j][i + 1], row[j + 1][i]});
      if (i + j < n - 1)
        m.tris.push_back({row[j][i + 1], row[j + 1][i + 1], row[j + 1][i]});
    }
  finalize(m);
  return m;
}

TriMesh refine_uniform(const TriMesh& old) {
  TriMesh m;
  m.verts = old.verts;
  int base = old.n_verts();
  for (int e = 0; e < old.n_edges(); ++e) {
    const Vec2& a = old.verts[old.edges[e][0]];
    const Vec2& b = old.verts[old.edges[e][1]];
    m.verts.push_back({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)});
  }
  for (int t = 0; t < old.n_tris(); ++t) {
    int v0 = old.tris[t][0], v1 = old.tris[t][1], v2 = old.tris[t][2];
    int m0 = base + old.tri_edges[t][0];
    int m1 = base + old.tri_edges[t][1];
    int m2 = base + old.tri_edges[t][2];
    m.tris.push_back({v0, m2, m1});
    m.tris.push_back({m2, v1, m0});
    m.tris.push_back({m1, m0, v2});
    m.tris.push_back({m0, m1, m2});
  }
  finalize(m);
  return m;
}

Domain parse_domain(const std::string& s) {
  if (s == "square") return Domain::Square;
  if (s == "lshape") return Domain::LShape;
  if (s == "triangle") return Domain::Triangle;
  throw std::invalid_argument("unknown domain: " + s);
}

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::Square: return "square";
    case Domain::LShape: return "lshape";
    default: return "triangle";
  }
}

TriMesh build_domain_mesh(Domain d, int n) {
  switch (d) {
    case Domain::Square: return build_square_mesh(n);
    case Domain::LShape: return build_lshape_mesh(n);
    default: return build_triangle_mesh(n);
  }
}

}  // namespace fem
