#pragma once
#include <optional>
#include <string>
#include <vector>

#include "fem/analysis.hpp"
#include "fem/assembly.hpp"
#include "fem/linalg.hpp"

namespace fem {

struct SourceSolution {
  int n = 0;  // subdivisions per side
  int dofs = 0;
  Eigen::VectorXd coeffs;
  bool has_errors = false;
  ErrorNorms errors;
};

// (delta Lap u_h, Lap v_h) = (f, v_h) on B3; errors filled when exact given
SourceSolution solve_source(Domain dom, int n, const CoefficientField& delta,
                            const std::function<double(double, double)>& f,
                            const ExactSolution* exact = nullptr, int quad_degree = 8);

struct SpectrumSolution {
  int n = 0;
  int dofs = 0;
  std::string scheme;  // "b3" | "morley"
  std::optional<double> alpha;
  std::string problem;  // "bihar" | "tep"
  std::vector<double> eigenvalues;  // bihar: lambda ascending; tep: real tau kept
  std::vector<double> sqrt_values;  // tep only: sqrt(tau)
  std::vector<double> residuals;
  Eigen::MatrixXd vectors;  // dofs x k columns
  int discarded_negative = 0;  // tep: real tau < 0 dropped
  std::string status = "ok";
};

SpectrumSolution solve_bihar_evp(Domain dom, int n, const CoefficientField& delta,
                                 int k, ElementKind scheme,
                                 std::optional<double> alpha = {}, double sigma = 1.0,
                                 double tol = 1e-9, int max_iter = 250,
                                 int quad_degree = 8);

// QEP linearization + shift-invert; retries once at sigma=4 when fewer than k
// real eigenvalues emerge. Reported tau >= 1e-6; eigenvectors scaled so that
// the grad-form energy x' G x equals 1.
SpectrumSolution solve_tep(Domain dom, int n, const CoefficientField& nref, int k,
                           ElementKind scheme, std::optional<double> alpha = {},
                           double sigma = 1.0, double tol = 1e-8, int max_iter = 300,
                           int quad_degree = 8);

struct SweepCell {
  double alpha = 0;
  int n = 0;
  bool ok = false;
  std::string error;
  SpectrumSolution sol;
};

// Morley runs over alphas x levels; failures recorded per cell, sweep continues
std::vector<SweepCell> morley_alpha_sweep(Domain dom, const std::vector<int>& ns,
                                          const CoefficientField& coeff,
                                          const std::vector<double>& alphas, int k,
                                          const std::string& problem, double sigma = 1.0,
                                          double tol = 0, int max_iter = 0);

}  // namespace fem
