#include "fem/coefficient.hpp"

#include <algorithm>
#include <cmath>

#include "fem/errors.hpp"

namespace fem {

namespace {

struct PresetDef {
  const char* name;
  double (*fn)(double, double);
  bool polynomial;
};

const PresetDef kPresets[] = {
    {"one", [](double, double) { return 1.0; }, true},
    {"delta_lin", [](double x, double y) { return 8.0 + x - y; }, true},
    {"delta_rad", [](double x, double y) { return std::sqrt(x * x + y * y) + 1.0; }, false},
    {"n16", [](double, double) { return 16.0; }, true},
    {"n24", [](double, double) { return 24.0; }, true},
    {"n_lin", [](double x, double y) { return 8.0 + x - y; }, true},
    {"n_quad", [](double x, double y) { return 18.0 + x * x + y * y; }, true},
};

}  // namespace

CoefficientField coefficient_preset(const std::string& name) {
  for (const auto& p : kPresets)
    if (name == p.name) return {p.name, p.fn, p.polynomial};
  throw ValidationError("unknown coefficient preset: " + name);
}

bool is_coefficient_preset(const std::string& name) {
  for (const auto& p : kPresets)
    if (name == p.name) return true;
  return false;
}

std::vector<std::string> coefficient_preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.push_back(p.name);
  return out;
}

CoefficientField constant_coefficient(double c) {
  return {"constant", [c](double, double) { return c; }, true};
}

CoefficientField poly_coefficient(const std::vector<std::array<double, 3>>& terms) {
  for (const auto& t : terms) {
    if (t[1] < 0 || t[2] < 0 || t[1] != std::floor(t[1]) || t[2] != std::floor(t[2]))
      throw ValidationError("polynomial powers must be nonnegative integers");
  }
  auto fn = [terms](double x, double y) {
    double s = 0;
    for (const auto& t : terms) s += t[0] * std::pow(x, t[1]) * std::pow(y, t[2]);
    return s;
  };
  return {"poly", fn, true};
}

std::array<double, 2> coefficient_range(const CoefficientField& c, const TriMesh& m) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  auto see = [&](double x, double y) {
    double v = c(x, y);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const auto& v : m.verts) see(v.x, v.y);
  for (const auto& e : m.edges) {
    const Vec2 &p = m.verts[e[0]], &q = m.verts[e[1]];
    see(0.5 * (p.x + q.x), 0.5 * (p.y + q.y));
  }
  for (const auto& t : m.tris) {
    const Vec2 &a = m.verts[t[0]], &b = m.verts[t[1]], &d = m.verts[t[2]];
    see((a.x + b.x + d.x) / 3, (a.y + b.y + d.y) / 3);
  }
  return {lo, hi};
}

}  // namespace fem
