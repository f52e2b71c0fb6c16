#include "entb/criteria.hpp"

#include <cmath>
#include <cstdio>

#include "entb/rearrange.hpp"

namespace entb {

namespace {

// Row i: row-major flattening of ops[i]^T, so that Tr(rho A ⊗ B) = x_A^T R(rho) x_B.
ComplexMatrix flatten_transposed(const std::vector<ComplexMatrix>& ops, int d) {
  ComplexMatrix x(static_cast<Eigen::Index>(ops.size()), d * d);
  for (std::size_t r = 0; r < ops.size(); ++r)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) x(static_cast<Eigen::Index>(r), i * d + j) = ops[r](j, i);
  return x;
}

ComplexMatrix complex_correlations(const DensityMatrix& rho, const std::vector<ComplexMatrix>& ops_a,
                                   const std::vector<ComplexMatrix>& ops_b) {
  const BipartiteDims dims = rho.dims();
  for (const auto& a : ops_a)
    if (a.rows() != dims.m || a.cols() != dims.m) throw Error(ErrorKind::DimensionMismatch, "A-side operator size");
  for (const auto& b : ops_b)
    if (b.rows() != dims.n || b.cols() != dims.n) throw Error(ErrorKind::DimensionMismatch, "B-side operator size");
  const ComplexMatrix r = realign(rho.matrix(), dims);
  return flatten_transposed(ops_a, dims.m) * r * flatten_transposed(ops_b, dims.n).transpose();
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace

double expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
  const auto d = rho.dims().total();
  if (obs.rows() != d || obs.cols() != d)
    throw Error(ErrorKind::DimensionMismatch, "observable must be " + std::to_string(d) + "x" + std::to_string(d));
  return trace_product(rho.matrix(), obs);
}

double variance(const DensityMatrix& rho, const ComplexMatrix& obs) {
  const double mean = expectation(rho, obs);
  if (hermiticity_error(obs) > tol::hermitian) throw Error(ErrorKind::NotHermitian, "observable is not Hermitian");
  const double v = trace_product(rho.matrix(), obs * obs) - mean * mean;
  return v < 0.0 && v > -1e-10 ? 0.0 : v;
}

RealMatrix correlations(const DensityMatrix& rho, const std::vector<ComplexMatrix>& ops_a,
                        const std::vector<ComplexMatrix>& ops_b) {
  return complex_correlations(rho, ops_a, ops_b).real();
}

CriterionResult lurs_value(const DensityMatrix& rho, const LooPair& pair) {
  const BipartiteDims dims = rho.dims();
  if (pair.dims() != dims) throw Error(ErrorKind::DimensionMismatch, "LOO pair dims do not match the state");

  const auto& a_ops = pair.set_a().observables;
  const auto& b_ops = pair.set_b().observables;
  const RealMatrix c = correlations(rho, a_ops, b_ops);
  const ComplexMatrix rho_a = partial_trace_b(rho);
  const ComplexMatrix rho_b = partial_trace_a(rho);

  double value = dims.m + dims.n;
  for (std::size_t i = 0; i < b_ops.size(); ++i) {
    double mean = trace_product(rho_b, b_ops[i]);
    if (i < a_ops.size()) {
      value += 2.0 * c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
      mean += trace_product(rho_a, a_ops[i]);
    }
    value -= mean * mean;
  }

  CriterionResult res{Criterion::Lurs, value, dims.m + dims.n - 2.0, false, pair};
  res.detected = res.value < res.threshold - tol::detect;
  return res;
}

double lurs_variance_sum(const DensityMatrix& rho, const LooPair& pair) {
  const BipartiteDims dims = rho.dims();
  if (pair.dims() != dims) throw Error(ErrorKind::DimensionMismatch, "LOO pair dims do not match the state");
  const ComplexMatrix id_a = ComplexMatrix::Identity(dims.m, dims.m);
  const ComplexMatrix id_b = ComplexMatrix::Identity(dims.n, dims.n);
  double total = 0.0;
  for (std::size_t i = 0; i < pair.size(); ++i) total += variance(rho, kron(pair.a(i), id_b) + kron(id_a, pair.b(i)));
  return total;
}

BlochDecomposition bloch(const DensityMatrix& rho) {
  const BipartiteDims dims = rho.dims();
  const GeneratorSet ga = gellmann(dims.m);
  const GeneratorSet gb = gellmann(dims.n);

  const ComplexMatrix t = complex_correlations(rho, ga.generators, gb.generators);
  const double residue = t.size() ? t.imag().cwiseAbs().maxCoeff() : 0.0;
  if (residue > tol::imaginary_residue) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "correlation matrix has imaginary part %.1e", residue);
    throw Error(ErrorKind::Diagnostics, buf);
  }

  BlochDecomposition bd;
  bd.dims = dims;
  const ComplexMatrix rho_a = partial_trace_b(rho);
  const ComplexMatrix rho_b = partial_trace_a(rho);
  bd.r.resize(static_cast<Eigen::Index>(ga.generators.size()));
  bd.s.resize(static_cast<Eigen::Index>(gb.generators.size()));
  for (std::size_t i = 0; i < ga.generators.size(); ++i)
    bd.r(static_cast<Eigen::Index>(i)) = dims.m / 2.0 * trace_product(rho_a, ga.generators[i]);
  for (std::size_t j = 0; j < gb.generators.size(); ++j)
    bd.s(static_cast<Eigen::Index>(j)) = dims.n / 2.0 * trace_product(rho_b, gb.generators[j]);
  bd.t = dims.m * dims.n / 4.0 * t.real();
  return bd;
}

ComplexMatrix reconstruct(const BlochDecomposition& bd) {
  const int m = bd.dims.m, n = bd.dims.n;
  const GeneratorSet ga = gellmann(m);
  const GeneratorSet gb = gellmann(n);
  const ComplexMatrix id_a = ComplexMatrix::Identity(m, m);
  const ComplexMatrix id_b = ComplexMatrix::Identity(n, n);

  ComplexMatrix local_a = id_a;
  for (Eigen::Index i = 0; i < bd.r.size(); ++i) local_a += bd.r(i) * ga.generators[i];
  ComplexMatrix local_b = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < bd.s.size(); ++j) local_b += bd.s(j) * gb.generators[j];

  ComplexMatrix out = kron(local_a, id_b) + kron(id_a, local_b);
  for (Eigen::Index i = 0; i < bd.t.rows(); ++i) {
    ComplexMatrix b_mix = ComplexMatrix::Zero(n, n);
    for (Eigen::Index j = 0; j < bd.t.cols(); ++j) b_mix += bd.t(i, j) * gb.generators[j];
    out += kron(ga.generators[i], b_mix);
  }
  return out / static_cast<double>(m * n);
}

double cm_threshold(BipartiteDims dims) {
  const double m = dims.m, n = dims.n;
  return std::sqrt(m * n * (m - 1.0) * (n - 1.0)) / 2.0;
}

CriterionResult cm_value(const DensityMatrix& rho) {
  const BlochDecomposition bd = bloch(rho);
  CriterionResult res{Criterion::CorrelationMatrix, trace_norm(bd.t), cm_threshold(rho.dims()), false, std::nullopt};
  res.detected = res.value > res.threshold + tol::detect;
  return res;
}

}  // namespace entb
