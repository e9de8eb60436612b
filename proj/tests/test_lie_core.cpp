#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spincm/lie_core.hpp"

#include <random>

using namespace spincm;

namespace {

CMatrix random_su(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix x = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      x(i, j) = Complex(g(rng), g(rng));
      x(j, i) = -std::conj(x(i, j));
    }
  double tr = 0;
  for (int i = 0; i < n - 1; ++i) {
    x(i, i) = Complex(0, g(rng));
    tr += x(i, i).imag();
  }
  x(n - 1, n - 1) = Complex(0, -tr);
  return x;
}

CMatrix random_herm(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = Complex(g(rng), g(rng));
  return CMatrix(0.5 * (x + x.adjoint()));
}

}  // namespace

TEST_CASE("element validation") {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 1) = h(1, 0) = 1.0;
  CHECK_NOTHROW(ConfigElement{h});
  CHECK_THROWS_AS(AlgebraElement{h}, std::invalid_argument);  // not traceless aH

  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = -1.0;
  CHECK_NOTHROW(AlgebraElement{x});
  CHECK_THROWS_AS(ConfigElement{x}, std::invalid_argument);

  CMatrix bad = x;
  bad(0, 0) = Complex(0, 0.5);
  CHECK_THROWS_AS(AlgebraElement{bad}, std::invalid_argument);  // trace i/2
}

TEST_CASE("commutator example and typing") {
  // [a, alpha] with a = [[0,1],[1,0]], alpha = diag(1,0) is [[0,-1],[1,0]].
  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  CMatrix al = CMatrix::Zero(2, 2);
  al(0, 0) = 1.0;
  CMatrix c = commutator(a, al);
  CHECK(std::abs(c(0, 1) - Complex(-1, 0)) < kStructTol);
  CHECK(std::abs(c(1, 0) - Complex(1, 0)) < kStructTol);
  CHECK(std::abs(c(0, 0)) < kStructTol);
  CHECK(is_anti_hermitian(c));
  CHECK(std::abs(c.trace()) < kStructTol);
}

TEST_CASE("pairing signature") {
  const int n = 3;
  for (std::uint64_t s = 0; s < 20; ++s) {
    CMatrix x = random_su(n, s + 1);
    if (x.norm() < 1e-12) continue;
    CHECK(invariant_pairing(x, x, Space::algebra) > 0.0);  // -Tr(X^2) > 0
    CMatrix v = random_herm(n, s + 100);
    CHECK(invariant_pairing(v, v, Space::config) >= 0.0);  // Tr(V^2) >= 0
  }
}

TEST_CASE("pairing ad-invariance") {
  const int n = 3;
  for (std::uint64_t s = 0; s < 10; ++s) {
    CMatrix x = random_su(n, 3 * s + 1);
    CMatrix y = random_su(n, 3 * s + 2);
    CMatrix z = random_su(n, 3 * s + 3);
    const double lhs = invariant_pairing(commutator(z, x), y, Space::algebra);
    const double rhs = -invariant_pairing(x, commutator(z, y), Space::algebra);
    CHECK(std::abs(lhs - rhs) < kStructTol);
  }
}

TEST_CASE("matrix_exp is unitary with det 1 and matches series") {
  const int n = 4;
  for (std::uint64_t s = 0; s < 10; ++s) {
    CMatrix x = 0.3 * random_su(n, s + 5);
    CMatrix g = matrix_exp(x);
    CHECK(is_unitary(g, kDerivedTol));
    CHECK(std::abs(g.determinant() - Complex(1, 0)) < kDerivedTol);
    // Compare against a plain Taylor series (converges fast at this norm).
    CMatrix series = CMatrix::Identity(n, n), term = CMatrix::Identity(n, n);
    for (int k = 1; k <= 30; ++k) {
      term = CMatrix(term * x / double(k));
      series += term;
    }
    CHECK((g - series).norm() < 1e-12);
  }
  CHECK((matrix_exp(CMatrix::Zero(n, n)) - CMatrix::Identity(n, n)).norm() <
        kStructTol);
}

TEST_CASE("adjoint action preserves spaces and composes") {
  const int n = 3;
  CMatrix g = matrix_exp(random_su(n, 11));
  CMatrix h = matrix_exp(random_su(n, 12));
  CMatrix x = random_su(n, 13);
  CHECK(is_anti_hermitian(adjoint_action(g, x)));
  CMatrix lhs = adjoint_action(CMatrix(g * h), x);
  CMatrix rhs = adjoint_action(g, adjoint_action(h, x));
  CHECK((lhs - rhs).norm() < kStructTol);
  // Pairing invariance under Ad.
  CMatrix y = random_su(n, 14);
  CHECK(std::abs(invariant_pairing(adjoint_action(g, x), adjoint_action(g, y),
                                   Space::algebra) -
                 invariant_pairing(x, y, Space::algebra)) < kStructTol);
}

TEST_CASE("fundamental field is the derivative of the action") {
  const int n = 3;
  CMatrix x = random_su(n, 21);
  CMatrix v = random_herm(n, 22);
  CMatrix field = fundamental_field(AlgebraElement(x), ConfigElement(v)).m;
  CHECK(is_hermitian(field));
  const double h = 1e-6;
  CMatrix gp = matrix_exp(CMatrix(h * x)), gm = matrix_exp(CMatrix(-h * x));
  CMatrix fd = (adjoint_action(gp, v) - adjoint_action(gm, v)) / (2 * h);
  CHECK((field - fd).norm() < 1e-8);
  CHECK((field - commutator(x, v)).norm() < kStructTol);
}

TEST_CASE("root datum structure") {
  const int n = 4;
  RootDatum datum = build_root_datum(n);
  CHECK(int(datum.roots.size()) == n * (n - 1));
  RVector q(n);
  q << 4, 2, 1, -7;
  CMatrix d = CMatrix::Zero(n, n);
  d.diagonal() = q.cast<Complex>();
  for (std::size_t k = 0; k < datum.roots.size(); ++k) {
    // [diag(q), E_ij] = (q_i - q_j) E_ij.
    CMatrix lhs = commutator(d, datum.root_vectors[k]);
    CMatrix rhs = datum.root_value(k, q) * datum.root_vectors[k];
    CHECK((lhs - rhs).norm() < kStructTol);
  }
}

TEST_CASE("restricted root relations ad(q)E = lambda B, ad(q)B = lambda E") {
  const int n = 4;
  RestrictedRootDatum datum = build_restricted_root_datum(n);
  RVector q(n);
  q << 3, 1, 0, -4;
  CMatrix d = CMatrix::Zero(n, n);
  d.diagonal() = q.cast<Complex>();
  for (std::size_t r = 0; r < datum.positive_restricted_roots.size(); ++r) {
    const double lam = datum.root_value(r, q);
    for (int k = 0; k < 2; ++k) {
      const CMatrix& e = datum.e_basis[r][k];
      const CMatrix& b = datum.b_basis[r][k];
      CHECK((commutator(d, e) - lam * b).norm() < kStructTol);
      CHECK((commutator(d, b) - lam * e).norm() < kStructTol);
      CHECK(std::abs(invariant_pairing(e, e, Space::algebra) - 1.0) < kStructTol);
      CHECK(std::abs(invariant_pairing(b, b, Space::config) - 1.0) < kStructTol);
    }
    CHECK(std::abs(invariant_pairing(datum.e_basis[r][0], datum.e_basis[r][1],
                                     Space::algebra)) < kStructTol);
  }
  // Centralizer basis: orthonormal, diagonal, commutes with diag(q).
  for (const auto& mb : datum.centralizer_basis) {
    CHECK(is_anti_hermitian(mb));
    CHECK((mb - CMatrix(mb.diagonal().asDiagonal())).norm() < kStructTol);
    CHECK(std::abs(invariant_pairing(mb, mb, Space::algebra) - 1.0) < kStructTol);
  }
  CHECK(int(datum.centralizer_basis.size()) == n - 1);
}

TEST_CASE("su orthonormal basis spans and is orthonormal") {
  const int n = 3;
  auto basis = su_orthonormal_basis(n);
  CHECK(int(basis.size()) == n * n - 1);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const double want = a == b ? 1.0 : 0.0;
      CHECK(std::abs(invariant_pairing(basis[a], basis[b], Space::algebra) - want) <
            kStructTol);
    }
  // Reconstruct a random element from its coefficients.
  CMatrix x = random_su(n, 31);
  CMatrix rec = CMatrix::Zero(n, n);
  for (const auto& e : basis)
    rec += invariant_pairing(x, e, Space::algebra) * e;
  CHECK((x - rec).norm() < kStructTol);
}
