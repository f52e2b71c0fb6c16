#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "entb/errors.hpp"
#include "entb/types.hpp"

namespace entb {

// Local dimensions of a bipartite system H_A ⊗ H_B. Basis |i>_A ⊗ |k>_B maps
// to row i*n + k.
struct BipartiteDims {
  int m = 2;
  int n = 2;

  int total() const { return m * n; }
  bool canonical() const { return m <= n; }
  BipartiteDims swapped() const { return {n, m}; }
  bool operator==(const BipartiteDims&) const = default;
};

// Throws BadParams unless m, n >= 2.
BipartiteDims make_dims(int m, int n);

struct Violation {
  ErrorKind kind;
  double magnitude;
};

// Everything validate_density checks, with the measured quantities, so a
// caller can report all violations at once.
struct DensityDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

DensityDiagnostics diagnose_density(const ComplexMatrix& mat, BipartiteDims dims);

class DensityMatrix {
 public:
  const BipartiteDims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return mat_; }
  // Set when the input had m > n and the subsystems were relabelled.
  bool swapped() const { return swapped_; }

 private:
  DensityMatrix(BipartiteDims dims, ComplexMatrix mat, bool swapped)
      : dims_(dims), mat_(std::move(mat)), swapped_(swapped) {}

  friend DensityMatrix validate_density(const ComplexMatrix& mat, BipartiteDims dims);

  BipartiteDims dims_;
  ComplexMatrix mat_;
  bool swapped_ = false;
};

// Validates and, for m > n, relabels A <-> B so the result has m <= n.
// Throws Error whose message lists every violated invariant.
DensityMatrix validate_density(const ComplexMatrix& mat, BipartiteDims dims);

// Exchanges the tensor factors: rows (i,k) -> (k,i).
ComplexMatrix swap_subsystems(const ComplexMatrix& mat, BipartiteDims dims);

class PureState {
 public:
  const BipartiteDims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amps_; }
  bool swapped() const { return swapped_; }

 private:
  PureState(BipartiteDims dims, ComplexVector amps, bool swapped)
      : dims_(dims), amps_(std::move(amps)), swapped_(swapped) {}

  friend PureState make_pure_state(const ComplexVector& amps, BipartiteDims dims);

  BipartiteDims dims_;
  ComplexVector amps_;
  bool swapped_ = false;
};

PureState make_pure_state(const ComplexVector& amps, BipartiteDims dims);
DensityMatrix to_density(const PureState& psi);

struct SchmidtDecomposition {
  BipartiteDims dims;
  std::vector<double> coefficients;  // mu_j, descending, sums to 1
  ComplexMatrix basis_a;             // m x m, column j is |j_A>
  ComplexMatrix basis_b;             // n x m, column j is |j_B>
};

SchmidtDecomposition schmidt(const PureState& psi);
ComplexVector reconstruct(const SchmidtDecomposition& sd);

double pure_concurrence(const PureState& psi);
double max_concurrence(int m);

ComplexMatrix partial_trace_b(const DensityMatrix& rho);
ComplexMatrix partial_trace_a(const DensityMatrix& rho);

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components);
DensityMatrix product_state(const ComplexMatrix& rho_a, const ComplexMatrix& rho_b);

// ---------------------------------------------------------------------------
// Example families.
//
//   bell            M            sum_j |jj>/sqrt(M)
//   tiles_upb                    3x3 bound entangled state from the tiles UPB
//   figure1         p            p|Psi><Psi| + (1-p)|01><01| on 2x3
//   isotropic       M, F         F|Phi+><Phi+| + (1-F)(I - |Phi+><Phi+|)/(M^2-1)
//   product         M, N, a, b   |a><a| ⊗ |b><b|
//   random_ginibre  M, N, seed   G G^dagger / Tr, G complex Gaussian
//   random_separable M, N, terms, seed
// ---------------------------------------------------------------------------

using FamilyParams = std::map<std::string, double>;

struct FamilySpec {
  std::string name;
  FamilyParams params;
};

// "name:key=value,key=value"
FamilySpec parse_family_spec(const std::string& text);

std::vector<std::string> family_names();
// Parameter keys a family accepts; throws UnknownFamily.
std::vector<std::string> family_parameter_names(const std::string& name);
DensityMatrix make_family(const std::string& name, const FamilyParams& params = {});
inline DensityMatrix make_family(const FamilySpec& spec) { return make_family(spec.name, spec.params); }

// The pure state a family is built around (Psi for figure1, Phi+ for bell and
// isotropic), if it has one.
std::optional<PureState> reference_pure_state(const std::string& name, const FamilyParams& params = {});

// ---------------------------------------------------------------------------
// Random states.

using Rng = std::mt19937_64;

ComplexMatrix random_unitary(int d, Rng& rng);
PureState random_pure_state(BipartiteDims dims, Rng& rng);
DensityMatrix random_ginibre(BipartiteDims dims, Rng& rng);
// Mixture of `terms` random pure product states with Dirichlet(1) weights.
DensityMatrix random_separable(BipartiteDims dims, int terms, Rng& rng);

}  // namespace entb
