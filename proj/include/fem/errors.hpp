#pragma once
#include <stdexcept>
#include <string>

namespace fem {

// bad input: configs, parameters, coefficients out of range
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// numerical failure: singular factorization, non-convergence
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fem
