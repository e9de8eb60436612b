#pragma once

// Rational and trigonometric classical dynamical r-matrices for sl(n,C),
// built from the mechanical-connection duals, with a numerical check of the
// classical dynamical Yang-Baxter equation in the fundamental representation.

#include "spincm/lie_core.hpp"

#include <Eigen/Sparse>

namespace spincm {

using SparseTensor = Eigen::SparseMatrix<Complex>;

enum class RMatrixFamily { rational, trigonometric };

/// Orthonormal basis of the Cartan h of sl(n,C) under the trace form:
/// real diagonal traceless matrices.
std::vector<CMatrix> cartan_orthonormal_basis(int n);

/// Operator basis labels: all E_ij (i != j, root order of build_root_datum)
/// followed by the Cartan basis.
struct DynamicalRMatrix {
  RMatrixFamily family;
  int n = 0;
  RVector base;                 // regular diagonal base point q (or a)
  Eigen::MatrixXcd op;          // operator on g in the root+Cartan basis
  SparseTensor tensor;          // element of g x g, fundamental representation
};

/// Casimir element of (sl(n,C), Tr): sum x_i x x_i + sum_alpha E_alpha x E_-alpha.
SparseTensor casimir_tensor(int n);

/// Contraction in the second slot: lambda -> sum x Tr(y lambda) for x x y.
CMatrix contract_second(const SparseTensor& t, int n, const CMatrix& lambda);

/// Rational family: E_alpha -> E_alpha/alpha(q), Cartan -> 0.
DynamicalRMatrix rational_r(int n, const RVector& q);

/// Trigonometric family: 1/2 Casimir + 1/2 sum coth(alpha(a)/2) E_alpha x E_-alpha;
/// Cartan part of the operator is the half identity.
DynamicalRMatrix trig_r(int n, const RVector& a);

struct CdybeResult {
  double residual_primary;   // Alt(dr) with sign pattern (+, -, +)
  double residual_mirrored;  // negated Alt(dr)
  double residual() const { return std::min(residual_primary, residual_mirrored); }
  bool primary_convention() const { return residual_primary <= residual_mirrored; }
};

/// Residual operator norm of Alt(dr) + [r12,r13] + [r12,r23] + [r13,r23] on
/// (C^n)^x3; derivatives by central differences of step h_step. `perturb_root`
/// >= 0 scales that root's coefficient by 1.01 (detector-sensitivity probe).
CdybeResult cdybe_check(RMatrixFamily family, int n, const RVector& q,
                        double h_step = 1e-5, int perturb_root = -1);

double cdybe_residual(RMatrixFamily family, int n, const RVector& q,
                      double h_step = 1e-5);

/// r + r21 in the fundamental representation (r21 = flip conjugation).
SparseTensor symmetrized_tensor(const DynamicalRMatrix& r);

}  // namespace spincm
