#include "spincm/lie_core.hpp"

#include <cmath>

namespace spincm {

CMatrix commutator(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return x * y - y * x;
}

double invariant_pairing(const CMatrix& x, const CMatrix& y, Space space) {
  if (x.rows() != y.rows())
    throw std::invalid_argument("invariant_pairing: dimension mismatch");
  const Complex t = (x * y).trace();
  switch (space) {
    case Space::config:
      if (!is_hermitian(x) || !is_hermitian(y))
        throw std::invalid_argument("invariant_pairing: config arguments must be Hermitian");
      return t.real();
    case Space::algebra:
      if (!is_anti_hermitian(x) || !is_anti_hermitian(y))
        throw std::invalid_argument("invariant_pairing: algebra arguments must be anti-Hermitian");
      return -t.real();
  }
  throw std::logic_error("invariant_pairing: bad space tag");
}

CMatrix matrix_exp(const CMatrix& x) {
  if (!x.allFinite()) throw std::invalid_argument("matrix_exp: non-finite input");
  // iX is Hermitian for anti-Hermitian X; exp through its spectral data.
  const CMatrix h = Complex(0, 1) * x;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXcd phases =
      (Complex(0, -1) * es.eigenvalues().cast<Complex>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix adjoint_action(const CMatrix& g, const CMatrix& x) {
  if (!is_unitary(g)) throw std::invalid_argument("adjoint_action: g is not unitary");
  return g * x * g.adjoint();
}

ConfigElement fundamental_field(const AlgebraElement& x, const ConfigElement& a) {
  return ConfigElement(commutator(x.m, a.m));
}

RootDatum build_root_datum(int n) {
  if (n < 2) throw std::invalid_argument("build_root_datum: n must be >= 2");
  RootDatum d;
  d.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      d.roots.emplace_back(i, j);
      CMatrix e = CMatrix::Zero(n, n);
      e(i, j) = 1.0;  // Tr(E_ij E_ji) = 1, so <E_alpha, E_-alpha> = 1
      d.root_vectors.push_back(std::move(e));
    }
  return d;
}

RestrictedRootDatum build_restricted_root_datum(int n) {
  if (n < 2) throw std::invalid_argument("build_restricted_root_datum: n must be >= 2");
  RestrictedRootDatum d;
  d.n = n;
  const double s = 1.0 / std::sqrt(2.0);
  const Complex I(0, 1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d.positive_restricted_roots.emplace_back(i, j);
      CMatrix eij = CMatrix::Zero(n, n), eji = CMatrix::Zero(n, n);
      eij(i, j) = 1.0;
      eji(j, i) = 1.0;
      // ad(q)E = lambda(q)B and ad(q)B = lambda(q)E for real diagonal q.
      std::array<CMatrix, 2> e = {s * (eij - eji), I * s * (eij + eji)};
      std::array<CMatrix, 2> b = {s * (eij + eji), I * s * (eij - eji)};
      d.e_basis.push_back(std::move(e));
      d.b_basis.push_back(std::move(b));
    }
  }
  for (int j = 0; j < n; ++j) {
    CMatrix bj = CMatrix::Zero(n, n);
    bj(j, j) = 1.0;
    d.slice_basis.push_back(std::move(bj));
  }
  // Orthonormal traceless diagonals: m = diagonal su(n), dimension n-1.
  for (int k = 1; k < n; ++k) {
    CMatrix ek = CMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) ek(i, i) = I * norm;
    ek(k, k) = -I * double(k) * norm;
    d.centralizer_basis.push_back(std::move(ek));
  }
  return d;
}

std::vector<CMatrix> su_orthonormal_basis(int n) {
  const RestrictedRootDatum d = build_restricted_root_datum(n);
  std::vector<CMatrix> basis;
  for (std::size_t k = 0; k < d.e_basis.size(); ++k) {
    basis.push_back(d.e_basis[k][0]);
    basis.push_back(d.e_basis[k][1]);
  }
  for (const auto& e0 : d.centralizer_basis) basis.push_back(e0);
  return basis;
}

}  // namespace spincm
