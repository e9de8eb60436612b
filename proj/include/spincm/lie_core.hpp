#pragma once

// Symmetric pair (su(n), Hermitian matrices): matrix arithmetic, root data,
// invariant pairings, group and algebra actions.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace spincm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Structural invariants are checked at construction to kStructTol; derived
// identities are tested at kDerivedTol; finite-difference checks at kFdTol.
inline constexpr double kStructTol = 1e-12;
inline constexpr double kDerivedTol = 1e-10;
inline constexpr double kFdTol = 1e-6;
inline constexpr double kEpsReg = 1e-8;

inline double herm_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}
inline double antiherm_defect(const CMatrix& m) {
  return (m + m.adjoint()).cwiseAbs().maxCoeff();
}
inline bool is_hermitian(const CMatrix& m, double tol = kStructTol) {
  return herm_defect(m) <= tol;
}
inline bool is_anti_hermitian(const CMatrix& m, double tol = kStructTol) {
  return antiherm_defect(m) <= tol;
}
inline bool is_unitary(const CMatrix& g, double tol = kDerivedTol) {
  return (g * g.adjoint() - CMatrix::Identity(g.rows(), g.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

/// Element of g = su(n): anti-Hermitian and traceless.
struct AlgebraElement {
  CMatrix m;

  AlgebraElement() = default;
  explicit AlgebraElement(CMatrix mat) : m(std::move(mat)) {
    if (!is_anti_hermitian(m))
      throw std::invalid_argument("AlgebraElement: matrix is not anti-Hermitian");
    if (std::abs(m.trace()) > kStructTol)
      throw std::invalid_argument("AlgebraElement: matrix is not traceless");
  }
  Eigen::Index n() const { return m.rows(); }
};

/// Element of V: Hermitian n x n matrices, the configuration space.
struct ConfigElement {
  CMatrix m;

  ConfigElement() = default;
  explicit ConfigElement(CMatrix mat) : m(std::move(mat)) {
    if (!is_hermitian(m))
      throw std::invalid_argument("ConfigElement: matrix is not Hermitian");
  }
  Eigen::Index n() const { return m.rows(); }
};

enum class Space { algebra, config };

/// [X, Y] = XY - YX.
CMatrix commutator(const CMatrix& x, const CMatrix& y);

/// Invariant pairing: Tr(XY) on V, -Tr(XY) on su(n) (positive definite).
double invariant_pairing(const CMatrix& x, const CMatrix& y, Space space);

/// exp(X) for anti-Hermitian X, via eigendecomposition of iX; unitary output.
CMatrix matrix_exp(const CMatrix& x);

/// Ad(g).X = g X g^dagger for unitary g.
CMatrix adjoint_action(const CMatrix& g, const CMatrix& x);

/// Fundamental vector field of the conjugation action: zeta_X(a) = [X, a].
ConfigElement fundamental_field(const AlgebraElement& x, const ConfigElement& a);

/// Root data of sl(n): roots alpha_ij(q) = q_i - q_j with E_ij elementary,
/// normalized so <E_alpha, E_-alpha> = 1 under the trace form.
struct RootDatum {
  int n = 0;
  std::vector<std::pair<int, int>> roots;  // ordered pairs (i, j), i != j
  std::vector<CMatrix> root_vectors;       // E_ij, aligned with `roots`
  double pairing_normalization = 1.0;

  double root_value(std::size_t k, const RVector& q) const {
    return q[roots[k].first] - q[roots[k].second];
  }
};

RootDatum build_root_datum(int n);

/// Restricted-root data of the pair (su(n), Hermitian matrices): for each
/// positive root lambda_ij two orthonormal pairs (E, B) with
/// ad(q)E = lambda(q)B and ad(q)B = lambda(q)E for diagonal q, plus
/// orthonormal bases of the slice Sigma and of m = Z_g(Sigma).
struct RestrictedRootDatum {
  int n = 0;
  std::vector<std::pair<int, int>> positive_restricted_roots;  // i < j
  // Per positive root: k_lambda = 2 pairs, stored flat as [root][pair].
  std::vector<std::array<CMatrix, 2>> e_basis;  // E_lambda^k in g
  std::vector<std::array<CMatrix, 2>> b_basis;  // B_lambda^k in V
  std::vector<CMatrix> slice_basis;             // B_0^j spanning Sigma
  std::vector<CMatrix> centralizer_basis;       // E_0^i spanning m

  double root_value(std::size_t k, const RVector& q) const {
    return q[positive_restricted_roots[k].first] -
           q[positive_restricted_roots[k].second];
  }
};

RestrictedRootDatum build_restricted_root_datum(int n);

/// Orthonormal basis of su(n) under <X,Y> = -Tr(XY): off-diagonal restricted
/// E-vectors followed by the diagonal centralizer basis.
std::vector<CMatrix> su_orthonormal_basis(int n);

}  // namespace spincm
