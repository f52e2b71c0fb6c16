#include "entb/loo.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/QR>

namespace entb {

namespace {

const Complex kI(0.0, 1.0);

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

ComplexMatrix checked_basis(int d, const std::optional<ComplexMatrix>& basis) {
  if (!basis) return ComplexMatrix::Identity(d, d);
  if (basis->rows() != d || basis->cols() != d)
    throw Error(ErrorKind::BadBasis, "basis must be " + std::to_string(d) + "x" + std::to_string(d));
  double err = (basis->adjoint() * *basis - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > tol::orthonormal) throw Error(ErrorKind::BadBasis, "basis not orthonormal, deviation " + fmt(err));
  return *basis;
}

ComplexMatrix outer(const ComplexMatrix& basis, int j, int k) { return basis.col(j) * basis.col(k).adjoint(); }

ComplexMatrix g_diag(const ComplexMatrix& e, int j) { return outer(e, j, j); }
ComplexMatrix g_plus(const ComplexMatrix& e, int j, int k) { return (outer(e, j, k) + outer(e, k, j)) / std::sqrt(2.0); }
ComplexMatrix g_minus(const ComplexMatrix& e, int j, int k) {
  return -kI * (outer(e, j, k) - outer(e, k, j)) / std::sqrt(2.0);
}

double hs_real(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr(a b) for Hermitian a, b
  return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace

bool LooDiagnostics::ok() const {
  return orthonormality_error <= tol::orthonormal && completeness_error <= tol::completeness &&
         hermiticity_error <= tol::hermitian;
}

LooDiagnostics diagnose_loo_set(const std::vector<ComplexMatrix>& obs, int dim) {
  LooDiagnostics d;
  ComplexMatrix sq = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    d.hermiticity_error = std::max(d.hermiticity_error, hermiticity_error(obs[i]));
    sq += obs[i] * obs[i];
    for (std::size_t j = i; j < obs.size(); ++j) {
      Complex ip = (obs[i].array() * obs[j].transpose().array()).sum();
      double expected = i == j ? 1.0 : 0.0;
      d.orthonormality_error = std::max(d.orthonormality_error, std::abs(ip - expected));
    }
  }
  d.completeness_error = (sq - static_cast<double>(dim) * ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
  return d;
}

LooSet make_loo_set(std::vector<ComplexMatrix> observables, int dim) {
  if (dim < 1) throw Error(ErrorKind::NotLOO, "dimension must be positive");
  if (observables.size() != static_cast<std::size_t>(dim * dim))
    throw Error(ErrorKind::NotLOO, "expected " + std::to_string(dim * dim) + " observables, got " +
                                       std::to_string(observables.size()));
  for (const auto& g : observables)
    if (g.rows() != dim || g.cols() != dim)
      throw Error(ErrorKind::NotLOO, "observable is not " + std::to_string(dim) + "x" + std::to_string(dim));
  LooDiagnostics d = diagnose_loo_set(observables, dim);
  if (!d.ok())
    throw Error(ErrorKind::NotLOO, "orthonormality " + fmt(d.orthonormality_error) + ", completeness " +
                                       fmt(d.completeness_error) + ", hermiticity " + fmt(d.hermiticity_error));
  return LooSet{dim, std::move(observables)};
}

LooPair::LooPair(LooSet set_a, LooSet set_b) : set_a_(std::move(set_a)), set_b_(std::move(set_b)) {
  if (set_a_.dim > set_b_.dim)
    throw Error(ErrorKind::DimensionMismatch, "A side must not be larger than B side (m <= n)");
  if (set_a_.observables.size() != static_cast<std::size_t>(set_a_.dim * set_a_.dim) ||
      set_b_.observables.size() != static_cast<std::size_t>(set_b_.dim * set_b_.dim))
    throw Error(ErrorKind::NotLOO, "LOO sets must have d^2 elements");
}

ComplexMatrix LooPair::a(std::size_t i) const {
  if (i < set_a_.observables.size()) return set_a_.observables[i];
  return ComplexMatrix::Zero(set_a_.dim, set_a_.dim);
}

LooSet standard_loos(int d, const std::optional<ComplexMatrix>& basis) {
  if (d < 1) throw Error(ErrorKind::BadParams, "dimension must be positive");
  const ComplexMatrix e = checked_basis(d, basis);
  std::vector<ComplexMatrix> obs;
  obs.reserve(d * d);
  for (int j = 0; j < d; ++j) obs.push_back(g_diag(e, j));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) obs.push_back(g_plus(e, j, k));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) obs.push_back(g_minus(e, j, k));
  return LooSet{d, std::move(obs)};
}

GeneratorSet gellmann(int d, const std::optional<ComplexMatrix>& basis) {
  if (d < 2) throw Error(ErrorKind::BadParams, "SU(d) generators need d >= 2");
  const ComplexMatrix e = checked_basis(d, basis);
  GeneratorSet gs{d, {}};
  gs.generators.reserve(d * d - 1);
  for (int l = 0; l <= d - 2; ++l) {
    ComplexMatrix w = ComplexMatrix::Zero(d, d);
    for (int i = 0; i <= l; ++i) w += g_diag(e, i);
    w -= (l + 1.0) * g_diag(e, l + 1);
    gs.generators.push_back(std::sqrt(2.0 / ((l + 1.0) * (l + 2.0))) * w);
  }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) gs.generators.push_back(std::sqrt(2.0) * g_plus(e, j, k));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) gs.generators.push_back(std::sqrt(2.0) * g_minus(e, j, k));
  return gs;
}

LooSet rotate(const LooSet& set, const RealMatrix& o) {
  const auto count = static_cast<Eigen::Index>(set.observables.size());
  if (o.rows() != count || o.cols() != count)
    throw Error(ErrorKind::NotOrthogonal, "rotation must be " + std::to_string(count) + "x" + std::to_string(count));
  double err = (o * o.transpose() - RealMatrix::Identity(count, count)).cwiseAbs().maxCoeff();
  if (err > tol::orthonormal) throw Error(ErrorKind::NotOrthogonal, "deviation " + fmt(err));

  std::vector<ComplexMatrix> out(count, ComplexMatrix::Zero(set.dim, set.dim));
  for (Eigen::Index i = 0; i < count; ++i)
    for (Eigen::Index j = 0; j < count; ++j)
      if (o(i, j) != 0.0) out[i] += o(i, j) * set.observables[j];
  return make_loo_set(std::move(out), set.dim);
}

RealMatrix loo_coordinates(const LooSet& set) {
  const LooSet ref = standard_loos(set.dim);
  const auto count = static_cast<Eigen::Index>(set.observables.size());
  RealMatrix c(count, static_cast<Eigen::Index>(ref.observables.size()));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) = hs_real(set.observables[i], ref.observables[j]);
  return c;
}

LooPair lemma1_pair(const SchmidtDecomposition& sd) {
  const int m = sd.dims.m, n = sd.dims.n;
  if (sd.basis_a.rows() != m || sd.basis_a.cols() != m || sd.basis_b.rows() != n || sd.basis_b.cols() != m)
    throw Error(ErrorKind::DimensionMismatch, "Schmidt bases do not match dims");

  ComplexMatrix eb(n, n);
  eb.leftCols(m) = sd.basis_b;
  if (n > m) {
    Eigen::HouseholderQR<ComplexMatrix> qr(sd.basis_b);
    ComplexMatrix q = qr.householderQ();
    eb.rightCols(n - m) = q.rightCols(n - m);
  }

  LooSet set_a = standard_loos(m, sd.basis_a);

  std::vector<ComplexMatrix> b;
  b.reserve(n * n);
  for (int j = 0; j < m; ++j) b.push_back(-g_diag(eb, j));
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) b.push_back(-g_plus(eb, j, k));
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) b.push_back(g_minus(eb, j, k));
  // Unpaired remainder of the B basis, same sign pattern.
  for (int j = m; j < n; ++j) b.push_back(-g_diag(eb, j));
  for (int j = 0; j < n; ++j)
    for (int k = std::max(j + 1, m); k < n; ++k) b.push_back(-g_plus(eb, j, k));
  for (int j = 0; j < n; ++j)
    for (int k = std::max(j + 1, m); k < n; ++k) b.push_back(g_minus(eb, j, k));

  return LooPair(std::move(set_a), make_loo_set(std::move(b), n));
}

LooPair isotropic_pair(int m, int n) {
  if (m != n)
    throw Error(ErrorKind::DimensionMismatch,
                "isotropic pair needs m == n, got " + std::to_string(m) + "x" + std::to_string(n));
  const GeneratorSet gs = gellmann(m);
  const std::size_t diag_count = static_cast<std::size_t>(m - 1);
  const std::size_t sym_count = static_cast<std::size_t>(m * (m - 1) / 2);

  std::vector<ComplexMatrix> a, b;
  const ComplexMatrix id = ComplexMatrix::Identity(m, m) / std::sqrt(static_cast<double>(m));
  a.push_back(id);
  b.push_back(-id);
  for (std::size_t i = 0; i < gs.generators.size(); ++i) {
    ComplexMatrix g = gs.generators[i] / std::sqrt(2.0);
    const bool antisymmetric = i >= diag_count + sym_count;
    a.push_back(g);
    b.push_back(antisymmetric ? g : ComplexMatrix(-g));
  }
  return LooPair(make_loo_set(std::move(a), m), make_loo_set(std::move(b), n));
}

RealMatrix random_orthogonal(int dim, Rng& rng) {
  if (dim < 1) throw Error(ErrorKind::BadParams, "dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(z);
  RealMatrix q = qr.householderQ();
  for (int j = 0; j < dim; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

RealMatrix random_orthogonal(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal(dim, rng);
}

}  // namespace entb
