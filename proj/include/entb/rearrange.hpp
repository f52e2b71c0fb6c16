#pragma once

#include "entb/qstate.hpp"

namespace entb {

enum class Rearrangement { PartialTranspose, Realignment };

struct RearrangedMatrix {
  Rearrangement kind;
  ComplexMatrix mat;
  BipartiteDims source_dims;
};

// (T_A x)_{(i,k),(j,l)} = x_{(j,k),(i,l)}
ComplexMatrix partial_transpose(const ComplexMatrix& mat, BipartiteDims dims);
RearrangedMatrix partial_transpose(const DensityMatrix& rho);

// R_{(i,j),(k,l)} = x_{(i,k),(j,l)}: row (i,j) is block (i,j) of x, flattened
// row-major. Result is m^2 x n^2.
ComplexMatrix realign(const ComplexMatrix& mat, BipartiteDims dims);
RearrangedMatrix realign(const DensityMatrix& rho);

// Sum of singular values.
double trace_norm(const ComplexMatrix& mat);
double trace_norm(const RealMatrix& mat);
// Sum of |eigenvalues|; input must be Hermitian.
double trace_norm_hermitian(const ComplexMatrix& mat);

double ppt_value(const DensityMatrix& rho);
double ccnr_value(const DensityMatrix& rho);

inline bool ppt_detects(double value) { return value > 1.0 + tol::detect; }
inline bool ccnr_detects(double value) { return value > 1.0 + tol::detect; }

}  // namespace entb
