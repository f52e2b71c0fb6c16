#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entb/loo.hpp"
#include "entb/qstate.hpp"

namespace entb {

enum class Criterion { Lurs, CorrelationMatrix };

struct CriterionResult {
  Criterion criterion;
  double value = 0.0;
  double threshold = 0.0;
  bool detected = false;
  std::optional<LooPair> pair;  // LURs only
};

double expectation(const DensityMatrix& rho, const ComplexMatrix& obs);
// <O^2> - <O>^2, tiny negative round-off clamped to 0.
double variance(const DensityMatrix& rho, const ComplexMatrix& obs);

// Real matrix Tr(rho A_i ⊗ B_j).
RealMatrix correlations(const DensityMatrix& rho, const std::vector<ComplexMatrix>& ops_a,
                        const std::vector<ComplexMatrix>& ops_b);

// sum_i Var(A_i ⊗ I + I ⊗ B_i) through
// m + n + 2 sum_i <A_i⊗B_i> - sum_i <A_i⊗I + I⊗B_i>^2.
// Threshold m + n - 2; detected when value < threshold - tol.
CriterionResult lurs_value(const DensityMatrix& rho, const LooPair& pair);

// Same quantity, summing the variances of the joint observables one by one.
double lurs_variance_sum(const DensityMatrix& rho, const LooPair& pair);

struct BlochDecomposition {
  BipartiteDims dims;
  RealVector r;  // m^2 - 1
  RealVector s;  // n^2 - 1
  RealMatrix t;  // (m^2 - 1) x (n^2 - 1)
};

// Coordinates w.r.t. gellmann(m), gellmann(n) in their canonical order.
BlochDecomposition bloch(const DensityMatrix& rho);
ComplexMatrix reconstruct(const BlochDecomposition& bd);

// K_MN = sqrt(MN(M-1)(N-1)) / 2
double cm_threshold(BipartiteDims dims);
// ||T|| against K_MN; detected when value > threshold + tol.
CriterionResult cm_value(const DensityMatrix& rho);

}  // namespace entb
