#include "entb/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace entb {

namespace {

std::string format_violation(const Violation& v) {
  return std::string(to_string(v.kind)) + " " + format_magnitude(v.magnitude);
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

ComplexVector basis_vector(int d, int i) {
  ComplexVector v = ComplexVector::Zero(d);
  v(i) = 1.0;
  return v;
}

ComplexVector maximally_entangled(int d) {
  ComplexVector phi = ComplexVector::Zero(d * d);
  for (int j = 0; j < d; ++j) phi(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return phi;
}

ComplexVector figure1_psi() {
  ComplexVector psi = ComplexVector::Zero(6);
  psi(0) = psi(4) = 1.0 / std::sqrt(2.0);
  return psi;
}

class ParamReader {
 public:
  ParamReader(std::string family, const FamilyParams& params, std::set<std::string> allowed)
      : family_(std::move(family)), params_(params) {
    for (const auto& [key, value] : params_) {
      if (!allowed.count(key))
        throw Error(ErrorKind::BadParams, family_ + ": unknown parameter '" + key + "'");
    }
  }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    auto it = params_.find(key);
    if (it != params_.end()) return it->second;
    if (fallback) return *fallback;
    throw Error(ErrorKind::BadParams, family_ + ": missing parameter '" + key + "'");
  }

  long long integer(const std::string& key, std::optional<long long> fallback = std::nullopt) const {
    auto it = params_.find(key);
    if (it == params_.end()) {
      if (fallback) return *fallback;
      throw Error(ErrorKind::BadParams, family_ + ": missing parameter '" + key + "'");
    }
    double v = it->second;
    if (!std::isfinite(v) || v != std::floor(v))
      throw Error(ErrorKind::BadParams, family_ + ": parameter '" + key + "' must be an integer");
    return static_cast<long long>(v);
  }

  double probability(const std::string& key) const {
    double v = real(key);
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorKind::BadParams, family_ + ": parameter '" + key + "' must lie in [0, 1]");
    return v;
  }

  int dimension(const std::string& key, int fallback) const {
    long long d = integer(key, fallback);
    if (d < 2 || d > 64)
      throw Error(ErrorKind::BadParams, family_ + ": dimension '" + key + "' must be in [2, 64]");
    return static_cast<int>(d);
  }

 private:
  std::string family_;
  const FamilyParams& params_;
};

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double re = normal(rng);
  double im = normal(rng);
  return {re, im};
}

ComplexVector random_unit_vector(int d, Rng& rng) {
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) v(i) = gaussian_complex(rng);
  return v / v.norm();
}

}  // namespace

BipartiteDims make_dims(int m, int n) {
  if (m < 2 || n < 2)
    throw Error(ErrorKind::BadParams,
                "subsystem dimensions must be >= 2, got " + std::to_string(m) + "x" + std::to_string(n));
  return {m, n};
}

std::string DensityDiagnostics::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += format_violation(v);
  }
  return out;
}

DensityDiagnostics diagnose_density(const ComplexMatrix& mat, BipartiteDims dims) {
  DensityDiagnostics d;
  const Eigen::Index size = dims.total();
  if (mat.rows() != size || mat.cols() != size) {
    double mismatch = std::max(std::abs(static_cast<double>(mat.rows() - size)),
                               std::abs(static_cast<double>(mat.cols() - size)));
    d.violations.push_back({ErrorKind::DimensionMismatch, mismatch});
    return d;
  }
  d.hermiticity_error = hermiticity_error(mat);
  d.trace_error = std::abs(mat.trace() - Complex(1.0, 0.0));
  ComplexMatrix herm = 0.5 * (mat + mat.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();

  if (d.hermiticity_error > tol::hermitian) d.violations.push_back({ErrorKind::NotHermitian, d.hermiticity_error});
  if (d.trace_error > tol::trace) d.violations.push_back({ErrorKind::TraceNotOne, d.trace_error});
  if (d.min_eigenvalue < -tol::psd) d.violations.push_back({ErrorKind::NotPSD, -d.min_eigenvalue});
  return d;
}

ComplexMatrix swap_subsystems(const ComplexMatrix& mat, BipartiteDims dims) {
  const int m = dims.m, n = dims.n;
  ComplexMatrix out(mat.rows(), mat.cols());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < n; ++l) out(k * m + i, l * m + j) = mat(i * n + k, j * n + l);
  return out;
}

DensityMatrix validate_density(const ComplexMatrix& mat, BipartiteDims dims) {
  dims = make_dims(dims.m, dims.n);
  DensityDiagnostics diag = diagnose_density(mat, dims);
  if (!diag.ok()) throw Error(diag.violations.front().kind, diag.summary());
  if (!dims.canonical()) return DensityMatrix(dims.swapped(), swap_subsystems(mat, dims), true);
  return DensityMatrix(dims, mat, false);
}

PureState make_pure_state(const ComplexVector& amps, BipartiteDims dims) {
  dims = make_dims(dims.m, dims.n);
  if (amps.size() != dims.total())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(dims.total()) + " amplitudes, got " +
                                                  std::to_string(amps.size()));
  double err = std::abs(amps.norm() - 1.0);
  if (err > tol::norm) {
    throw Error(ErrorKind::NotNormalized, "norm off by " + format_magnitude(err));
  }
  if (dims.canonical()) return PureState(dims, amps, false);
  ComplexVector out(amps.size());
  for (int i = 0; i < dims.m; ++i)
    for (int k = 0; k < dims.n; ++k) out(k * dims.m + i) = amps(i * dims.n + k);
  return PureState(dims.swapped(), out, true);
}

DensityMatrix to_density(const PureState& psi) { return validate_density(projector(psi.amplitudes()), psi.dims()); }

namespace {

ComplexMatrix amplitude_matrix(const PureState& psi) {
  const int m = psi.dims().m, n = psi.dims().n;
  ComplexMatrix a(m, n);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = psi.amplitudes()(i * n + k);
  return a;
}

}  // namespace

SchmidtDecomposition schmidt(const PureState& psi) {
  ComplexMatrix a = amplitude_matrix(psi);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition sd;
  sd.dims = psi.dims();
  const auto& sv = svd.singularValues();
  sd.coefficients.resize(sv.size());
  for (Eigen::Index j = 0; j < sv.size(); ++j) sd.coefficients[j] = sv(j) * sv(j);
  sd.basis_a = svd.matrixU();
  sd.basis_b = svd.matrixV().conjugate();
  return sd;
}

ComplexVector reconstruct(const SchmidtDecomposition& sd) {
  ComplexVector out = ComplexVector::Zero(sd.dims.total());
  for (std::size_t j = 0; j < sd.coefficients.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(j);
    out += std::sqrt(sd.coefficients[j]) *
           kron(sd.basis_a.col(col), sd.basis_b.col(col));
  }
  return out;
}

double pure_concurrence(const PureState& psi) {
  ComplexMatrix a = amplitude_matrix(psi);
  ComplexMatrix rho_a = a * a.adjoint();
  double purity = rho_a.squaredNorm();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double max_concurrence(int m) { return std::sqrt(2.0 * (m - 1) / m); }

ComplexMatrix partial_trace_b(const DensityMatrix& rho) {
  const int m = rho.dims().m, n = rho.dims().n;
  const ComplexMatrix& r = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n; ++k) out(i, j) += r(i * n + k, j * n + k);
  return out;
}

ComplexMatrix partial_trace_a(const DensityMatrix& rho) {
  const int m = rho.dims().m, n = rho.dims().n;
  const ComplexMatrix& r = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < m; ++i) out(k, l) += r(i * n + k, i * n + l);
  return out;
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components) {
  if (components.empty()) throw Error(ErrorKind::WeightSumError, "no components");
  const BipartiteDims dims = components.front().second.dims();
  double total = 0.0;
  ComplexMatrix acc = ComplexMatrix::Zero(dims.total(), dims.total());
  for (const auto& [w, rho] : components) {
    if (!(w >= 0.0)) throw Error(ErrorKind::WeightSumError, "negative weight " + std::to_string(w));
    if (rho.dims() != dims) throw Error(ErrorKind::DimensionMismatch, "components have different dimensions");
    total += w;
    acc += w * rho.matrix();
  }
  if (std::abs(total - 1.0) > tol::trace) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "weights sum to %.12g", total);
    throw Error(ErrorKind::WeightSumError, buf);
  }
  return validate_density(acc, dims);
}

DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b) {
  return validate_density(kron(rho_a, rho_b), {static_cast<int>(rho_a.rows()), static_cast<int>(rho_b.rows())});
}

// ---------------------------------------------------------------------------

FamilySpec parse_family_spec(const std::string& text) {
  FamilySpec spec;
  auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (spec.name.empty()) throw Error(ErrorKind::BadParams, "empty family name in '" + text + "'");
  if (colon == std::string::npos) return spec;

  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorKind::BadParams, "expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw Error(ErrorKind::BadParams, "parameter '" + key + "' is not a number: '" + value + "'");
    spec.params[key] = v;
  }
  return spec;
}

std::vector<std::string> family_names() {
  return {"bell", "tiles_upb", "figure1", "isotropic", "product", "random_ginibre", "random_separable"};
}

std::vector<std::string> family_parameter_names(const std::string& name) {
  if (name == "bell") return {"M"};
  if (name == "tiles_upb") return {};
  if (name == "figure1") return {"p"};
  if (name == "isotropic") return {"M", "F"};
  if (name == "product") return {"M", "N", "a", "b"};
  if (name == "random_ginibre") return {"M", "N", "seed"};
  if (name == "random_separable") return {"M", "N", "terms", "seed"};
  throw Error(ErrorKind::UnknownFamily, "'" + name + "'");
}

DensityMatrix make_family(const std::string& name, const FamilyParams& params) {
  if (name == "bell") {
    ParamReader p(name, params, {"M"});
    int d = p.dimension("M", 2);
    return validate_density(projector(maximally_entangled(d)), {d, d});
  }
  if (name == "tiles_upb") {
    ParamReader p(name, params, {});
    const double s2 = std::sqrt(2.0);
    auto e = [](int i) { return basis_vector(3, i); };
    ComplexVector all = (e(0) + e(1) + e(2)) / std::sqrt(3.0);
    const ComplexVector psis[] = {
        kron(e(0), (e(0) - e(1)) / s2),
        kron((e(0) - e(1)) / s2, e(2)),
        kron(e(2), (e(1) - e(2)) / s2),
        kron((e(1) - e(2)) / s2, e(0)),
        kron(all, all),
    };
    ComplexMatrix rho = ComplexMatrix::Identity(9, 9);
    for (const auto& psi : psis) rho -= projector(psi);
    return validate_density(rho / 4.0, {3, 3});
  }
  if (name == "figure1") {
    ParamReader r(name, params, {"p"});
    double p = r.probability("p");
    ComplexMatrix rho = p * projector(figure1_psi()) + (1.0 - p) * projector(basis_vector(6, 1));
    return validate_density(rho, {2, 3});
  }
  if (name == "isotropic") {
    ParamReader r(name, params, {"M", "F"});
    int d = r.dimension("M", 2);
    double f = r.probability("F");
    ComplexMatrix phi = projector(maximally_entangled(d));
    const int dd = d * d;
    ComplexMatrix rho = f * phi + (1.0 - f) * (ComplexMatrix::Identity(dd, dd) - phi) / (dd - 1.0);
    return validate_density(rho, {d, d});
  }
  if (name == "product") {
    ParamReader r(name, params, {"M", "N", "a", "b"});
    int m = r.dimension("M", 2), n = r.dimension("N", 2);
    long long a = r.integer("a", 0), b = r.integer("b", 0);
    if (a < 0 || a >= m || b < 0 || b >= n) throw Error(ErrorKind::BadParams, "product: basis index out of range");
    return product_state(projector(basis_vector(m, static_cast<int>(a))),
                         projector(basis_vector(n, static_cast<int>(b))));
  }
  if (name == "random_ginibre" || name == "random_separable") {
    const bool sep = name == "random_separable";
    ParamReader r(name, params, sep ? std::set<std::string>{"M", "N", "seed", "terms"}
                                    : std::set<std::string>{"M", "N", "seed"});
    BipartiteDims dims{r.dimension("M", 2), r.dimension("N", 2)};
    long long seed = r.integer("seed", 0);
    if (seed < 0) throw Error(ErrorKind::BadParams, name + ": seed must be non-negative");
    Rng rng(static_cast<std::uint64_t>(seed));
    if (!sep) return random_ginibre(dims, rng);
    long long terms = r.integer("terms", 4);
    if (terms < 1) throw Error(ErrorKind::BadParams, name + ": terms must be >= 1");
    return random_separable(dims, static_cast<int>(terms), rng);
  }
  throw Error(ErrorKind::UnknownFamily, "'" + name + "'");
}

std::optional<PureState> reference_pure_state(const std::string& name, const FamilyParams& params) {
  if (name == "figure1") return make_pure_state(figure1_psi(), {2, 3});
  if (name == "bell" || name == "isotropic") {
    auto it = params.find("M");
    int d = it == params.end() ? 2 : static_cast<int>(it->second);
    return make_pure_state(maximally_entangled(d), {d, d});
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

ComplexMatrix random_unitary(int d, Rng& rng) {
  ComplexMatrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = gaussian_complex(rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Complex diag = r(j, j);
    double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

PureState random_pure_state(BipartiteDims dims, Rng& rng) {
  return make_pure_state(random_unit_vector(dims.total(), rng), dims);
}

DensityMatrix random_ginibre(BipartiteDims dims, Rng& rng) {
  const int d = dims.total();
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gaussian_complex(rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return validate_density(rho, dims);
}

DensityMatrix random_separable(BipartiteDims dims, int terms, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(terms);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
  for (int t = 0; t < terms; ++t) {
    ComplexVector a = random_unit_vector(dims.m, rng);
    ComplexVector b = random_unit_vector(dims.n, rng);
    rho += (w[t] / total) * kron(projector(a), projector(b));
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return validate_density(rho, dims);
}

}  // namespace entb
