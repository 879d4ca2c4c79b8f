#include "fem/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "CLI11.hpp"
#include "fem/b3.hpp"
#include "fem/errors.hpp"
#include "fem/morley.hpp"
#include "fem/problems.hpp"
#include "json.hpp"

namespace fem {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;

struct SourceData {
  std::function<double(double, double)> f;
  ExactSolution exact;
};

std::optional<SourceData> source_data_for(const std::string& preset) {
  if (preset == "example1") {
    SourceData sd;
    sd.f = [](double x, double y) {
      return -4 * std::pow(kPi, 4) *
             (std::cos(2 * kPi * x) + std::cos(2 * kPi * y) -
              4 * std::cos(2 * kPi * x) * std::cos(2 * kPi * y));
    };
    sd.exact.value = [](double x, double y) {
      double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
      return sx * sx * sy * sy;
    };
    sd.exact.gradient = [](double x, double y) -> std::array<double, 2> {
      double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
      return {kPi * std::sin(2 * kPi * x) * sy * sy,
              kPi * std::sin(2 * kPi * y) * sx * sx};
    };
    sd.exact.hessian = [](double x, double y) -> std::array<double, 3> {
      double sx = std::sin(kPi * x), sy = std::sin(kPi * y);
      return {2 * kPi * kPi * std::cos(2 * kPi * x) * sy * sy,
              kPi * kPi * std::sin(2 * kPi * x) * std::sin(2 * kPi * y),
              2 * kPi * kPi * std::cos(2 * kPi * y) * sx * sx};
    };
    return sd;
  }
  if (preset == "example2" || preset == "example3") {
    SourceData sd;
    sd.exact.value = [](double x, double y) {
      double s = 1 - x - y;
      return x * x * y * y * s * s;
    };
    sd.exact.gradient = [](double x, double y) -> std::array<double, 2> {
      double s = 1 - x - y;
      return {2 * x * y * y * s * (s - x), 2 * x * x * y * s * (s - y)};
    };
    sd.exact.hessian = [](double x, double y) -> std::array<double, 3> {
      double s = 1 - x - y;
      return {2 * y * y * s * s - 8 * x * y * y * s + 2 * x * x * y * y,
              4 * x * y * s * s - 4 * x * y * y * s - 4 * x * x * y * s +
                  2 * x * x * y * y,
              2 * x * x * s * s - 8 * x * x * y * s + 2 * x * x * y * y};
    };
    if (preset == "example2")
      sd.f = [](double x, double y) {
        double t = x + y;
        return 72 * t * t - 48 * t + 8;
      };
    else
      sd.f = [](double x, double y) {
        return 64 * x * x * x + 48 * x * x * y + 528 * x * x - 48 * x * y * y +
               1152 * x * y - 368 * x - 64 * y * y * y + 624 * y * y - 400 * y + 64;
      };
    return sd;
  }
  return std::nullopt;
}

struct PresetDef {
  const char* name;
  const char* description;
  const char* kind;
  const char* domain;
  int n0;
  int levels;
  const char* scheme;
  const char* coefficient;
  const char* sweep_problem;
  std::vector<double> alphas;
  int num_eigs;
};

const std::vector<PresetDef>& preset_defs() {
  static const std::vector<PresetDef> defs = {
      {"example1", "source problem on the unit square, delta=1, trigonometric exact solution",
       "source", "square", 4, 5, "b3", "one", "bihar", {}, 6},
      {"example2", "source problem on the unit right triangle, delta=1, polynomial exact solution",
       "source", "triangle", 4, 5, "b3", "one", "bihar", {}, 6},
      {"example3", "source problem on the unit right triangle, delta=8+x-y, polynomial exact solution",
       "source", "triangle", 4, 5, "b3", "delta_lin", "bihar", {}, 6},
      {"example4", "bi-Laplacian eigenvalues on the unit square, delta=1",
       "bihar-evp", "square", 4, 6, "b3", "one", "bihar", {}, 10},
      {"example5", "bi-Laplacian eigenvalues on the L-shaped domain, delta=1",
       "bihar-evp", "lshape", 4, 6, "b3", "one", "bihar", {}, 10},
      {"example6", "bi-Laplacian eigenvalues on the unit square, delta=8+x-y",
       "bihar-evp", "square", 8, 5, "b3", "delta_lin", "bihar", {}, 10},
      {"example7", "bi-Laplacian eigenvalues on the unit square, delta=sqrt(x^2+y^2)+1",
       "bihar-evp", "square", 8, 5, "b3", "delta_rad", "bihar", {}, 10},
      {"example8", "transmission eigenvalues on the unit square, n=16",
       "tep", "square", 4, 6, "b3", "n16", "tep", {}, 6},
      {"example9", "transmission eigenvalues on the unit square, n=8+x-y",
       "tep", "square", 4, 6, "b3", "n_lin", "tep", {}, 6},
      {"example10", "transmission eigenvalues on the L-shaped domain, n=8+x-y",
       "tep", "lshape", 4, 6, "b3", "n_lin", "tep", {}, 6},
      {"morley-sweep-bihar", "Morley alpha sensitivity sweep, bi-Laplacian eigenvalues, delta=1",
       "morley-sweep", "square", 16, 3, "morley", "one", "bihar", {0.1, 0.5, 0.9}, 10},
      {"morley-sweep-tep", "Morley alpha sensitivity sweep, transmission eigenvalues, n=16",
       "morley-sweep", "square", 16, 3, "morley", "n16", "tep",
       {0.1 / 15.0, 0.5 / 15.0, 0.9 / 15.0}, 10},
  };
  return defs;
}

std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["kind"] = c.kind;
  j["domain"] = c.domain;
  j["n0"] = c.n0;
  j["levels"] = c.levels;
  j["scheme"] = c.scheme;
  if (c.coefficient_poly.empty()) {
    j["coefficient"] = c.coefficient;
  } else {
    json terms = json::array();
    for (const auto& t : c.coefficient_poly) terms.push_back({t[0], t[1], t[2]});
    j["coefficient"] = terms;
  }
  j["sweep_problem"] = c.sweep_problem;
  j["alphas"] = c.alphas;
  j["num_eigs"] = c.num_eigs;
  j["shift"] = c.shift;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["out_dir"] = c.out_dir;
  j["dump_matrices"] = c.dump_matrices;
  if (!c.preset.empty()) j["preset"] = c.preset;
  return j;
}

// orders per value column; rows[i] = values at level i
std::vector<std::vector<std::optional<double>>> column_orders(
    const std::vector<std::vector<double>>& rows, bool known_exact) {
  std::vector<std::vector<std::optional<double>>> out(
      rows.size(), std::vector<std::optional<double>>(rows.empty() ? 0 : rows[0].size()));
  if (rows.empty()) return out;
  size_t k = rows[0].size();
  for (size_t j = 0; j < k; ++j) {
    std::vector<double> col;
    for (const auto& r : rows) col.push_back(j < r.size() ? r[j] : 0.0);
    auto ords = known_exact ? order_known_exact(col) : order_successive(col);
    for (size_t i = 0; i < rows.size(); ++i) out[i][j] = ords[i];
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string render() const {
    std::string s;
    auto emit = [&s](const std::vector<std::string>& r) {
      for (size_t i = 0; i < r.size(); ++i) {
        if (i) s += ',';
        s += r[i];
      }
      s += '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return s;
  }
};

void dump_level_matrices(const ExperimentConfig& cfg, const CoefficientField& coeff,
                         Domain dom, int level, int n) {
  TriMesh mesh = build_domain_mesh(dom, n);
  ElementKind el = cfg.scheme == "b3" ? ElementKind::B3 : ElementKind::Morley;
  DofMap d = el == ElementKind::B3 ? build_b3_dofmap(mesh) : build_morley_dofmap(mesh);
  std::string base = cfg.dump_matrices + "/level" + std::to_string(level) + "_";
  if (cfg.kind == "source") {
    write_matrix_market(assemble_bilaplace(mesh, d, el, coeff), base + "K.mtx");
  } else if (cfg.kind == "tep" ||
             (cfg.kind == "morley-sweep" && cfg.sweep_problem == "tep")) {
    std::optional<double> a;
    if (el == ElementKind::Morley) a = cfg.alphas.at(0);
    TepMatrices tm = assemble_tep_matrices(mesh, d, el, coeff, a);
    write_matrix_market(tm.A, base + "A.mtx");
    write_matrix_market(tm.B, base + "B.mtx");
    write_matrix_market(tm.C, base + "C.mtx");
  } else {
    SpMat A;
    if (el == ElementKind::B3) {
      A = assemble_bilaplace(mesh, d, el, coeff);
    } else {
      double a = cfg.alphas.at(0);
      CoefficientField shifted{"delta-alpha",
                               [coeff, a](double x, double y) { return coeff(x, y) - a; },
                               coeff.polynomial};
      A = assemble_hessian(mesh, d, el, constant_coefficient(a)) +
          SpMat(assemble_bilaplace(mesh, d, el, shifted));
      finalize(A);
    }
    write_matrix_market(A, base + "A.mtx");
    write_matrix_market(assemble_mass(mesh, d, el, constant_coefficient(1.0)),
                        base + "M.mtx");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  static const std::set<std::string> kinds = {"source", "bihar-evp", "tep", "morley-sweep"};
  if (!kinds.count(kind)) throw ValidationError("unknown experiment kind: " + kind);
  parse_domain(domain);
  if (n0 < 2) throw ValidationError("n0 must be at least 2");
  if (domain == "lshape" && n0 % 2 != 0)
    throw ValidationError("lshape requires an even subdivision count");
  if (levels < 1) throw ValidationError("levels must be at least 1");
  if (scheme != "b3" && scheme != "morley")
    throw ValidationError("scheme must be b3 or morley");
  if (kind == "source" && scheme != "b3")
    throw ValidationError("source experiments use the b3 scheme");
  if (kind == "morley-sweep" && scheme != "morley")
    throw ValidationError("morley-sweep requires scheme morley");
  if (sweep_problem != "bihar" && sweep_problem != "tep")
    throw ValidationError("sweep_problem must be bihar or tep");
  if (num_eigs < 1) throw ValidationError("num_eigs must be at least 1");
  if (!std::isfinite(shift)) throw ValidationError("shift must be finite");
  if (tol < 0 || !std::isfinite(tol)) throw ValidationError("tol must be nonnegative");
  if (max_iter < 0) throw ValidationError("max_iter must be nonnegative");
  if (out_dir.empty()) throw ValidationError("out_dir must not be empty");
  make_coefficient();  // throws on bad preset / polynomial
  bool needs_alpha = (scheme == "morley");
  if (needs_alpha && alphas.empty())
    throw ValidationError("Morley runs require at least one alpha");
  if (!needs_alpha && !alphas.empty())
    throw ValidationError("alpha is only meaningful for the Morley scheme");
  if (kind != "morley-sweep" && alphas.size() > 1)
    throw ValidationError("single runs take exactly one alpha");
  for (double a : alphas)
    if (!(a > 0)) throw ValidationError("alpha values must be positive");
  if (kind == "source" && !source_data_for(preset))
    throw ValidationError("source experiments need a preset supplying f and the exact solution "
                          "(example1, example2 or example3)");
}

CoefficientField ExperimentConfig::make_coefficient() const {
  if (!coefficient_poly.empty()) return poly_coefficient(coefficient_poly);
  return coefficient_preset(coefficient);
}

ExperimentConfig config_preset(const std::string& name) {
  for (const auto& d : preset_defs()) {
    if (name != d.name) continue;
    ExperimentConfig c;
    c.kind = d.kind;
    c.domain = d.domain;
    c.n0 = d.n0;
    c.levels = d.levels;
    c.scheme = d.scheme;
    c.coefficient = d.coefficient;
    c.sweep_problem = d.sweep_problem;
    c.alphas = d.alphas;
    c.num_eigs = d.num_eigs;
    c.preset = d.name;
    return c;
  }
  throw ValidationError("unknown preset: " + name);
}

std::vector<PresetInfo> preset_list() {
  std::vector<PresetInfo> out;
  for (const auto& d : preset_defs()) out.push_back({d.name, d.description});
  return out;
}

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const std::set<std::string> known = {
      "kind",     "domain",   "n0",       "levels",  "scheme",
      "coefficient", "sweep_problem", "alphas", "num_eigs", "shift",
      "tol",      "max_iter", "out_dir",  "dump_matrices", "preset"};
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw ValidationError("unknown config key: " + item.key());

  ExperimentConfig c;
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw ValidationError("preset must be a string");
    c = config_preset(j["preset"].get<std::string>());
  }
  auto get_str = [&](const char* key, std::string& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw ValidationError(std::string(key) + " must be a string");
    dst = j[key].get<std::string>();
  };
  auto get_int = [&](const char* key, int& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw ValidationError(std::string(key) + " must be an integer");
    dst = j[key].get<int>();
  };
  auto get_num = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw ValidationError(std::string(key) + " must be a number");
    dst = j[key].get<double>();
  };
  get_str("kind", c.kind);
  get_str("domain", c.domain);
  get_int("n0", c.n0);
  get_int("levels", c.levels);
  get_str("scheme", c.scheme);
  if (j.contains("coefficient")) {
    if (j["coefficient"].is_string()) {
      c.coefficient = j["coefficient"].get<std::string>();
      c.coefficient_poly.clear();
    } else if (j["coefficient"].is_array()) {
      c.coefficient_poly.clear();
      for (const auto& t : j["coefficient"]) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() ||
            !t[2].is_number())
          throw ValidationError("polynomial coefficient terms must be [c, i, j] numbers");
        c.coefficient_poly.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
      }
    } else {
      throw ValidationError("coefficient must be a preset name or a term list");
    }
  }
  get_str("sweep_problem", c.sweep_problem);
  if (j.contains("alphas")) {
    if (!j["alphas"].is_array()) throw ValidationError("alphas must be an array");
    c.alphas.clear();
    for (const auto& a : j["alphas"]) {
      if (!a.is_number()) throw ValidationError("alphas entries must be numbers");
      c.alphas.push_back(a.get<double>());
    }
  }
  get_int("num_eigs", c.num_eigs);
  get_num("shift", c.shift);
  get_num("tol", c.tol);
  get_int("max_iter", c.max_iter);
  get_str("out_dir", c.out_dir);
  get_str("dump_matrices", c.dump_matrices);
  return c;
}

std::string config_to_json_text(const ExperimentConfig& cfg) {
  return config_json(cfg).dump(2) + "\n";
}

int run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  if (!cfg.dump_matrices.empty()) fs::create_directories(cfg.dump_matrices);

  CoefficientField coeff = cfg.make_coefficient();
  Domain dom = parse_domain(cfg.domain);
  ElementKind el = cfg.scheme == "b3" ? ElementKind::B3 : ElementKind::Morley;
  const int k = cfg.num_eigs;

  json report;
  report["config"] = config_json(cfg);
  json jresults = json::array();
  CsvTable csv;
  int exit_code = 0;
  std::string error_msg;
  auto t0 = std::chrono::steady_clock::now();
  auto seconds_since = [](std::chrono::steady_clock::time_point t) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
  };

  auto flush = [&]() {
    report["results"] = jresults;
    if (!error_msg.empty()) report["error"] = error_msg;
    report["total_seconds"] = seconds_since(t0);
    write_text(cfg.out_dir + "/table.csv", csv.render());
    write_text(cfg.out_dir + "/report.json", report.dump(2) + "\n");
  };

  int nvals = cfg.kind == "source" ? 3 : k;
  csv.header = {"level", "h", "dofs"};
  if (cfg.kind == "morley-sweep") csv.header.insert(csv.header.begin(), "alpha");
  for (int i = 1; i <= nvals; ++i) csv.header.push_back("value_" + std::to_string(i));
  for (int i = 1; i <= nvals; ++i) csv.header.push_back("order_" + std::to_string(i));

  try {
    if (cfg.kind == "morley-sweep") {
      std::vector<int> ns;
      for (int l = 0; l < cfg.levels; ++l) ns.push_back(cfg.n0 << l);
      if (!cfg.dump_matrices.empty())
        for (int l = 0; l < cfg.levels; ++l) dump_level_matrices(cfg, coeff, dom, l + 1, ns[l]);
      auto cells = morley_alpha_sweep(dom, ns, coeff, cfg.alphas, k, cfg.sweep_problem,
                                      cfg.shift, cfg.tol, cfg.max_iter);
      int ok_cells = 0;
      for (size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
        // orders within one alpha track, only when every level solved
        std::vector<std::vector<double>> vals(cfg.levels);
        bool all_ok = true;
        for (int l = 0; l < cfg.levels; ++l) {
          const auto& cell = cells[ai * cfg.levels + l];
          if (!cell.ok) {
            all_ok = false;
            continue;
          }
          vals[l] = cfg.sweep_problem == "tep" ? cell.sol.sqrt_values
                                               : cell.sol.eigenvalues;
          vals[l].resize(k, std::nan(""));
        }
        auto ords = all_ok ? column_orders(vals, false)
                           : std::vector<std::vector<std::optional<double>>>(
                                 cfg.levels, std::vector<std::optional<double>>(k));
        for (int l = 0; l < cfg.levels; ++l) {
          const auto& cell = cells[ai * cfg.levels + l];
          json jr;
          jr["alpha"] = cell.alpha;
          jr["level"] = l + 1;
          jr["n"] = cell.n;
          jr["h"] = 1.0 / cell.n;
          if (cell.ok) {
            ++ok_cells;
            jr["dofs"] = cell.sol.dofs;
            jr["values"] = vals[l];
            jr["residuals"] = cell.sol.residuals;
            jr["status"] = cell.sol.status;
            json jo = json::array();
            for (const auto& o : ords[l]) o ? jo.push_back(*o) : jo.push_back(nullptr);
            jr["orders"] = jo;
            std::vector<std::string> row = {fmt10(cell.alpha), std::to_string(l + 1),
                                            fmt10(1.0 / cell.n),
                                            std::to_string(cell.sol.dofs)};
            for (int i = 0; i < k; ++i) row.push_back(fmt10(vals[l][i]));
            for (int i = 0; i < k; ++i)
              row.push_back(ords[l][i] ? fmt10(*ords[l][i]) : "");
            csv.rows.push_back(row);
          } else {
            jr["status"] = "failed: " + cell.error;
          }
          jresults.push_back(jr);
        }
      }
      if (ok_cells == 0) {
        error_msg = "all sweep cells failed";
        exit_code = 3;
      }
      flush();
      return exit_code;
    }

    std::vector<std::vector<double>> all_vals;
    std::vector<json> level_json;
    std::vector<std::array<std::string, 3>> level_head;  // level, h, dofs

    for (int l = 0; l < cfg.levels; ++l) {
      int n = cfg.n0 << l;
      auto tl = std::chrono::steady_clock::now();
      json jr;
      jr["level"] = l + 1;
      jr["n"] = n;
      jr["h"] = 1.0 / n;
      std::vector<double> vals;
      int dofs = 0;
      if (cfg.kind == "source") {
        const auto sd = source_data_for(cfg.preset);
        SourceSolution sol = solve_source(dom, n, coeff, sd->f, &sd->exact);
        dofs = sol.dofs;
        vals = {sol.errors.l2, sol.errors.h1, sol.errors.h2};
        jr["err_l2"] = vals[0];
        jr["err_h1"] = vals[1];
        jr["err_h2"] = vals[2];
      } else {
        std::optional<double> a;
        if (el == ElementKind::Morley) a = cfg.alphas.at(0);
        const bool tep = cfg.kind == "tep";
        double etol = cfg.tol > 0 ? cfg.tol : (tep ? 1e-8 : 1e-9);
        int eit = cfg.max_iter > 0 ? cfg.max_iter : (tep ? 300 : 250);
        SpectrumSolution sol =
            tep ? solve_tep(dom, n, coeff, k, el, a, cfg.shift, etol, eit)
                : solve_bihar_evp(dom, n, coeff, k, el, a, cfg.shift, etol, eit);
        dofs = sol.dofs;
        vals = cfg.kind == "tep" ? sol.sqrt_values : sol.eigenvalues;
        jr["eigenvalues"] = sol.eigenvalues;
        if (cfg.kind == "tep") {
          jr["sqrt_tau"] = sol.sqrt_values;
          jr["discarded_negative"] = sol.discarded_negative;
        }
        jr["residuals"] = sol.residuals;
        jr["status"] = sol.status;
        if (sol.status != "ok")
          throw SolverError("level " + std::to_string(l + 1) + ": " + sol.status);
      }
      jr["dofs"] = dofs;
      jr["seconds"] = seconds_since(tl);
      if (!cfg.dump_matrices.empty()) dump_level_matrices(cfg, coeff, dom, l + 1, n);
      all_vals.push_back(vals);
      level_json.push_back(jr);
      level_head.push_back({std::to_string(l + 1), fmt10(1.0 / n), std::to_string(dofs)});
    }

    auto ords = column_orders(all_vals, cfg.kind == "source");
    for (size_t l = 0; l < all_vals.size(); ++l) {
      json jo = json::array();
      for (const auto& o : ords[l]) o ? jo.push_back(*o) : jo.push_back(nullptr);
      level_json[l]["orders"] = jo;
      jresults.push_back(level_json[l]);
      std::vector<std::string> row = {level_head[l][0], level_head[l][1], level_head[l][2]};
      for (int i = 0; i < nvals; ++i)
        row.push_back(i < (int)all_vals[l].size() ? fmt10(all_vals[l][i]) : "nan");
      for (int i = 0; i < nvals; ++i)
        row.push_back(ords[l][i] ? fmt10(*ords[l][i]) : "");
      csv.rows.push_back(row);
    }
    flush();
    return 0;
  } catch (const SolverError& e) {
    error_msg = e.what();
    exit_code = 3;
    flush();
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return exit_code;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"nonconforming finite elements for fourth-order source, eigenvalue "
               "and transmission eigenvalue problems"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment; writes table.csv and report.json");
  std::string config_path, preset_name, out_dir, dump_dir, alpha_str;
  int levels = 0, num_eigs = 0, max_iter = 0;
  double shift = 0, tol = 0;
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--preset", preset_name, "preset name (see list-presets)");
  run->add_option("--levels", levels, "override number of mesh levels");
  run->add_option("--num-eigs", num_eigs, "override number of eigenvalues");
  run->add_option("--shift", shift, "override eigensolver shift");
  run->add_option("--alpha", alpha_str, "override alpha list, comma separated");
  run->add_option("--tol", tol, "override solver tolerance");
  run->add_option("--max-iter", max_iter, "override solver iteration cap");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--dump-matrices", dump_dir, "export assembled matrices (Matrix Market) to DIR");

  auto* mi = app.add_subcommand("mesh-info", "print mesh statistics as JSON");
  std::string mi_domain = "square";
  int mi_n = 4;
  mi->add_option("--domain", mi_domain, "square | triangle | lshape");
  mi->add_option("--n", mi_n, "subdivisions per side");

  auto* lp = app.add_subcommand("list-presets", "list available experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (lp->parsed()) {
      for (const auto& p : preset_list())
        std::printf("%-20s %s\n", p.name.c_str(), p.description.c_str());
      return 0;
    }
    if (mi->parsed()) {
      TriMesh m = build_domain_mesh(parse_domain(mi_domain), mi_n);
      int bv = 0, be = 0;
      for (bool b : m.vert_boundary) bv += b;
      for (bool b : m.edge_boundary) be += b;
      json j;
      j["domain"] = mi_domain;
      j["n"] = mi_n;
      j["vertices"] = m.n_verts();
      j["edges"] = m.n_edges();
      j["triangles"] = m.n_tris();
      j["boundary_vertices"] = bv;
      j["interior_vertices"] = m.n_verts() - bv;
      j["boundary_edges"] = be;
      j["interior_edges"] = m.n_edges() - be;
      j["b3_dofs"] = build_b3_dofmap(m).n_dofs;
      j["morley_dofs"] = build_morley_dofmap(m).n_dofs;
      std::printf("%s\n", j.dump(2).c_str());
      return 0;
    }
    // run
    ExperimentConfig cfg;
    if (!config_path.empty() && !preset_name.empty())
      throw ValidationError("give either --config or --preset, not both");
    if (!config_path.empty()) {
      std::ifstream f(config_path, std::ios::binary);
      if (!f) throw ValidationError("cannot read config file: " + config_path);
      std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      cfg = config_from_json_text(text);
    } else if (!preset_name.empty()) {
      cfg = config_preset(preset_name);
    } else {
      throw ValidationError("run requires --config or --preset");
    }
    if (run->count("--levels")) cfg.levels = levels;
    if (run->count("--num-eigs")) cfg.num_eigs = num_eigs;
    if (run->count("--shift")) cfg.shift = shift;
    if (run->count("--tol")) cfg.tol = tol;
    if (run->count("--max-iter")) cfg.max_iter = max_iter;
    if (run->count("--out")) cfg.out_dir = out_dir;
    if (run->count("--dump-matrices")) cfg.dump_matrices = dump_dir;
    if (run->count("--alpha")) {
      cfg.alphas.clear();
      std::string s = alpha_str;
      size_t pos = 0;
      while (pos <= s.size()) {
        size_t c = s.find(',', pos);
        std::string tok = s.substr(pos, c == std::string::npos ? c : c - pos);
        if (!tok.empty()) {
          size_t used = 0;
          double v = std::stod(tok, &used);
          if (used != tok.size()) throw ValidationError("bad alpha value: " + tok);
          cfg.alphas.push_back(v);
        }
        if (c == std::string::npos) break;
        pos = c + 1;
      }
      if (cfg.alphas.empty()) throw ValidationError("empty alpha list");
    }
    return run_experiment(cfg);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}

}  // namespace fem
