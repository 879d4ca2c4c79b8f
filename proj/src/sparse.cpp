#include "fem/sparse.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fem {

void finalize(SpMat& m) {
  m.prune([](int, int, double v) { return v != 0.0; });
  m.makeCompressed();
}

double max_abs(const SpMat& m) {
  double v = 0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) v = std::max(v, std::abs(it.value()));
  return v;
}

double norm1(const SpMat& m) {
  Eigen::VectorXd colsum = Eigen::VectorXd::Zero(m.cols());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it) colsum[it.col()] += std::abs(it.value());
  return m.cols() ? colsum.maxCoeff() : 0.0;
}

double symmetry_error(const SpMat& m) {
  SpMat d = m - SpMat(m.transpose());
  return max_abs(d);
}

void write_matrix_market(const SpMat& m, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(f, "%ld %ld %ld\n", (long)m.rows(), (long)m.cols(), (long)m.nonZeros());
  for (int k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      std::fprintf(f, "%d %d %.17g\n", (int)it.row() + 1, (int)it.col() + 1, it.value());
  std::fclose(f);
}

}  // namespace fem
