#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "entb/qstate.hpp"

namespace entb {

// An orthonormal basis (Tr(G_i G_j) = delta_ij) of the d^2-dimensional real
// space of Hermitian d x d operators.
struct LooSet {
  int dim = 0;
  std::vector<ComplexMatrix> observables;
};

struct LooDiagnostics {
  double orthonormality_error = 0.0;  // max |Tr(G_i G_j) - delta_ij|
  double completeness_error = 0.0;    // max |sum_i G_i^2 - d I|
  double hermiticity_error = 0.0;
  bool ok() const;
};

LooDiagnostics diagnose_loo_set(const std::vector<ComplexMatrix>& observables, int dim);
// Throws NotLOO on a wrong count, non-Hermitian element, or broken invariant.
LooSet make_loo_set(std::vector<ComplexMatrix> observables, int dim);

// Observables for the two sides of a LUR, paired by position. When m < n the
// A side is padded with zero matrices up to n^2 entries.
class LooPair {
 public:
  LooPair(LooSet set_a, LooSet set_b);

  BipartiteDims dims() const { return {set_a_.dim, set_b_.dim}; }
  const LooSet& set_a() const { return set_a_; }
  const LooSet& set_b() const { return set_b_; }
  std::size_t size() const { return set_b_.observables.size(); }
  // Zero matrix for i >= m^2.
  ComplexMatrix a(std::size_t i) const;
  const ComplexMatrix& b(std::size_t i) const { return set_b_.observables[i]; }

 private:
  LooSet set_a_;
  LooSet set_b_;
};

// Traceless Hermitian generators {w_l, u_jk, v_jk} with Tr(l_i l_j) = 2 delta_ij.
struct GeneratorSet {
  int dim = 0;
  std::vector<ComplexMatrix> generators;
};

// {g_j} then {g+_jk} then {g-_jk}, pairs (j,k) with j < k in lexicographic
// order. `basis` (columns) defaults to the computational basis.
LooSet standard_loos(int d, const std::optional<ComplexMatrix>& basis = std::nullopt);

// {w_0..w_{d-2}} then {u_jk} then {v_jk}, same pair order as standard_loos.
GeneratorSet gellmann(int d, const std::optional<ComplexMatrix>& basis = std::nullopt);

// G'_i = sum_j o_ij G_j. Throws NotOrthogonal unless o o^T = I within 1e-10.
LooSet rotate(const LooSet& set, const RealMatrix& o);

// Real coefficients of each element in standard_loos(dim): row i holds
// Tr(G_i g_j). Orthogonal for any LooSet; rotate(standard_loos(d), c) == set.
RealMatrix loo_coordinates(const LooSet& set);

// Pair attaining the pure-state LUR lower bound: A = {g_j, g+_jk, g-_jk},
// B = {-g_j, -g+_jk, g-_jk} in the respective Schmidt bases. When n > m the
// B basis is completed and the extra B elements follow the paired ones.
LooPair lemma1_pair(const SchmidtDecomposition& sd);

// A = {I/sqrt(M), w/sqrt2, u/sqrt2, v/sqrt2}, B = {-I/sqrt(N), -w/sqrt2,
// -u/sqrt2, v/sqrt2}. Requires m == n.
LooPair isotropic_pair(int m, int n);

// QR of a seeded Gaussian matrix with R's diagonal forced positive.
RealMatrix random_orthogonal(int dim, std::uint64_t seed);
RealMatrix random_orthogonal(int dim, Rng& rng);

}  // namespace entb
