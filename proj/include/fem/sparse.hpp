#pragma once
#include <Eigen/Sparse>
#include <string>

namespace fem {

// Compressed-row storage throughout; isCompressed() doubles as the finalized
// flag. Factorizations that want column-major take a converted copy.
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using SpMatCol = Eigen::SparseMatrix<double>;

// prune exact zeros and compress
void finalize(SpMat& m);
inline bool finalized(const SpMat& m) { return m.isCompressed(); }

double max_abs(const SpMat& m);
double norm1(const SpMat& m);           // max absolute column sum
double symmetry_error(const SpMat& m);  // max |M - M^T|

void write_matrix_market(const SpMat& m, const std::string& path);

}  // namespace fem
