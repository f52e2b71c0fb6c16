#pragma once

// Independent reference computations used as oracles by the test suites.
// Nothing here calls the library routine it is meant to check.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "entb/entb.hpp"

namespace entb::test {

inline const std::vector<BipartiteDims> kPropertyDims = {{2, 2}, {2, 3}, {3, 3}};

inline ComplexVector ket(int d, int i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

inline ComplexMatrix proj(const ComplexVector& v) { return v * v.adjoint(); }

inline double max_abs(const ComplexMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

// Tr(rho A ⊗ B) by forming the Kronecker product explicitly.
inline Complex naive_expectation(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix ab(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) ab.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return (rho * ab).trace();
}

// Partial transpose by exchanging n x n blocks (i,j) <-> (j,i).
inline ComplexMatrix block_partial_transpose(const ComplexMatrix& rho, BipartiteDims d) {
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < d.m; ++i)
    for (int j = 0; j < d.m; ++j) out.block(i * d.n, j * d.n, d.n, d.n) = rho.block(j * d.n, i * d.n, d.n, d.n);
  return out;
}

// Realignment: row (i,j) is the row-major vectorisation of block (i,j).
inline ComplexMatrix block_realign(const ComplexMatrix& rho, BipartiteDims d) {
  ComplexMatrix out(d.m * d.m, d.n * d.n);
  for (int i = 0; i < d.m; ++i)
    for (int j = 0; j < d.m; ++j) {
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> blk =
          rho.block(i * d.n, j * d.n, d.n, d.n);
      out.row(i * d.m + j) = Eigen::Map<const ComplexVector>(blk.data(), blk.size()).transpose();
    }
  return out;
}

// Sum of singular values as sum sqrt(eig(A A^dagger)) on the smaller Gram matrix.
inline double gram_trace_norm(const ComplexMatrix& a) {
  ComplexMatrix g = a.rows() <= a.cols() ? ComplexMatrix(a * a.adjoint()) : ComplexMatrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) s += std::sqrt(std::max(0.0, es.eigenvalues()(k)));
  return s;
}

// 2 sqrt(sum_{j<k} mu_j mu_k)
inline double schmidt_concurrence(const std::vector<double>& mu) {
  double s = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j)
    for (std::size_t k = j + 1; k < mu.size(); ++k) s += mu[j] * mu[k];
  return 2.0 * std::sqrt(s);
}

inline double sum_sqrt_pairs(const std::vector<double>& mu) {
  double s = 0.0;
  for (std::size_t j = 0; j < mu.size(); ++j)
    for (std::size_t k = j + 1; k < mu.size(); ++k) s += std::sqrt(mu[j] * mu[k]);
  return s;
}

// Right-hand side of the pure-state LUR inequality: M + N - 2 - 4 sum_{j<k} sqrt(mu_j mu_k).
inline double lemma1_rhs(BipartiteDims d, const std::vector<double>& mu) {
  return d.m + d.n - 2.0 - 4.0 * sum_sqrt_pairs(mu);
}

// For m == n the LUR value over LOO pairs is minimised in closed form:
// with C, a, b the correlations / local means in any orthonormal Hermitian
// basis, min_Q [2 tr(C Q^T) - |a + Q b|^2] over O(n^2) equals
// -2 ||C - a b^T||_tr - |a|^2 - |b|^2.
inline double lurs_optimum_equal_dims(const DensityMatrix& rho) {
  const BipartiteDims d = rho.dims();
  const int da = d.m * d.m, db = d.n * d.n;
  std::vector<ComplexMatrix> ga, gb;
  auto herm_basis = [](int dim) {
    // Unit matrices E_jj, (E_jk + E_kj)/sqrt2, i(E_jk - E_kj)/sqrt2 built directly.
    std::vector<ComplexMatrix> out;
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
        if (j == k) {
          g(j, j) = 1.0;
        } else if (j < k) {
          g(j, k) = g(k, j) = 1.0 / std::sqrt(2.0);
        } else {
          g(k, j) = Complex(0.0, 1.0) / std::sqrt(2.0);
          g(j, k) = Complex(0.0, -1.0) / std::sqrt(2.0);
        }
        out.push_back(g);
      }
    return out;
  };
  ga = herm_basis(d.m);
  gb = herm_basis(d.n);
  const ComplexMatrix ia = ComplexMatrix::Identity(d.m, d.m), ib = ComplexMatrix::Identity(d.n, d.n);
  Eigen::MatrixXd c(da, db);
  Eigen::VectorXd a(da), b(db);
  for (int j = 0; j < da; ++j) a(j) = naive_expectation(rho.matrix(), ga[j], ib).real();
  for (int k = 0; k < db; ++k) b(k) = naive_expectation(rho.matrix(), ia, gb[k]).real();
  for (int j = 0; j < da; ++j)
    for (int k = 0; k < db; ++k) c(j, k) = naive_expectation(rho.matrix(), ga[j], gb[k]).real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c - a * b.transpose());
  const double value = d.m + d.n - 2.0 * svd.singularValues().sum() - a.squaredNorm() - b.squaredNorm();
  return (d.m + d.n - 2.0 - value) / std::sqrt(2.0 * d.m * (d.m - 1.0));
}

inline LooPair random_loo_pair(BipartiteDims d, Rng& rng) {
  return LooPair(rotate(standard_loos(d.m), random_orthogonal(d.m * d.m, rng)),
                 rotate(standard_loos(d.n), random_orthogonal(d.n * d.n, rng)));
}

inline std::vector<double> random_dirichlet(int k, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> mu(k);
  double s = 0.0;
  for (auto& x : mu) s += (x = e(rng));
  for (auto& x : mu) x /= s;
  return mu;
}

}  // namespace entb::test
