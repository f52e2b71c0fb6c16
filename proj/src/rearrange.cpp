#include "entb/rearrange.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace entb {

ComplexMatrix partial_transpose(const ComplexMatrix& mat, BipartiteDims dims) {
  const int m = dims.m, n = dims.n;
  ComplexMatrix out(mat.rows(), mat.cols());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i * n + k, j * n + l) = mat(j * n + k, i * n + l);
  return out;
}

RearrangedMatrix partial_transpose(const DensityMatrix& rho) {
  return {Rearrangement::PartialTranspose, partial_transpose(rho.matrix(), rho.dims()), rho.dims()};
}

ComplexMatrix realign(const ComplexMatrix& mat, BipartiteDims dims) {
  const int m = dims.m, n = dims.n;
  ComplexMatrix out(m * m, n * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i * m + j, k * n + l) = mat(i * n + k, j * n + l);
  return out;
}

RearrangedMatrix realign(const DensityMatrix& rho) {
  return {Rearrangement::Realignment, realign(rho.matrix(), rho.dims()), rho.dims()};
}

double trace_norm(const ComplexMatrix& mat) {
  if (mat.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(mat);
  return svd.singularValues().sum();
}

double trace_norm(const RealMatrix& mat) {
  if (mat.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(mat);
  return svd.singularValues().sum();
}

double trace_norm_hermitian(const ComplexMatrix& mat) {
  if (mat.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double ppt_value(const DensityMatrix& rho) {
  return trace_norm_hermitian(partial_transpose(rho.matrix(), rho.dims()));
}

double ccnr_value(const DensityMatrix& rho) { return trace_norm(realign(rho.matrix(), rho.dims())); }

}  // namespace entb
