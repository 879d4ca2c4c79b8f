#pragma once
#include <optional>
#include <string>
#include <vector>

#include "fem/coefficient.hpp"

namespace fem {

// One experiment = one mesh ladder (n = n0 * 2^(level-1), level = 1..levels).
// Coefficient is either a preset name or a list of (c, i, j) monomial terms.
struct ExperimentConfig {
  std::string kind;  // source | bihar-evp | tep | morley-sweep
  std::string domain = "square";
  int n0 = 4;
  int levels = 4;
  std::string scheme = "b3";  // b3 | morley
  std::string coefficient = "one";
  std::vector<std::array<double, 3>> coefficient_poly;  // used when nonempty
  std::string sweep_problem = "bihar";                  // morley-sweep only
  std::vector<double> alphas;
  int num_eigs = 6;
  double shift = 1.0;
  double tol = 0;     // 0 = per-problem default
  int max_iter = 0;   // 0 = per-problem default
  std::string out_dir = ".";
  std::string dump_matrices;  // empty = no export
  std::string preset;         // set when built from a preset; supplies source data

  void validate() const;  // throws ValidationError
  CoefficientField make_coefficient() const;
};

ExperimentConfig config_from_json_text(const std::string& text);  // rejects unknown keys
ExperimentConfig config_preset(const std::string& name);
std::string config_to_json_text(const ExperimentConfig& cfg);

struct PresetInfo {
  std::string name, description;
};
std::vector<PresetInfo> preset_list();

// writes table.csv and report.json into cfg.out_dir; returns process exit code
// (0 ok, 2 validation, 3 solver failure with partial results flushed)
int run_experiment(const ExperimentConfig& cfg);

int cli_main(int argc, char** argv);

}  // namespace fem
