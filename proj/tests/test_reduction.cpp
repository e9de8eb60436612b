#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spincm/reduction.hpp"

#include <random>

using namespace spincm;

namespace {

std::mt19937_64 rng(2024);
std::normal_distribution<double> gauss;

CMatrix random_herm(int n) {
  CMatrix x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = Complex(gauss(rng), gauss(rng));
  return CMatrix(0.5 * (x + x.adjoint()));
}

CMatrix random_spin(int n) {
  CMatrix z = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      z(i, j) = Complex(gauss(rng), gauss(rng));
      z(j, i) = -std::conj(z(i, j));
    }
  return z;
}

RVector decreasing_vector(int n, double gap = 0.5) {
  RVector q(n);
  double cur = double(n);
  for (int i = 0; i < n; ++i) {
    q[i] = cur;
    cur -= gap + std::abs(gauss(rng));
  }
  return q;
}

ReducedPoint random_reduced(int n) {
  auto [zf, gauge] = gauge_fix_spin(random_spin(n));
  return ReducedPoint(decreasing_vector(n), RVector::Random(n), zf, gauge);
}

}  // namespace

TEST_CASE("momentum map worked value") {
  CMatrix a(2, 2);
  a << 0, 1, 1, 0;
  CMatrix al(2, 2);
  al << 1, 0, 0, 0;
  CMatrix mu = momentum_map(PhasePoint(ConfigElement(a), ConfigElement(al))).m;
  CHECK(std::abs(mu(0, 1) - Complex(-1, 0)) < kStructTol);
  CHECK(std::abs(mu(1, 0) - Complex(1, 0)) < kStructTol);
  CHECK(std::abs(mu(0, 0)) < kStructTol);
  CHECK(std::abs(mu(1, 1)) < kStructTol);
}

TEST_CASE("connection_dual entries and typing") {
  RVector q(2);
  q << 1, -1;
  CMatrix z = random_spin(2);
  CMatrix d = connection_dual(q, z);
  CHECK(is_hermitian(d));
  CHECK(std::abs(d(0, 0)) < kStructTol);
  CHECK(std::abs(d(0, 1) - z(0, 1) / 2.0) < kStructTol);
}

TEST_CASE("locked inertia worked value") {
  // q = diag(1, -1), X = E_12 - E_21: [X, q] has squared norm 8.
  CMatrix qd = CMatrix::Zero(2, 2);
  qd(0, 0) = 1;
  qd(1, 1) = -1;
  CMatrix x(2, 2);
  x << 0, 1, -1, 0;
  CMatrix field = commutator(x, qd);
  CHECK(invariant_pairing(field, field, Space::config) ==
        doctest::Approx(8.0).epsilon(1e-14));
  LockedInertia li = locked_inertia(ConfigElement(qd));
  // Gram diagonal = lambda(q)^2 = 4 for the single restricted root.
  for (int k = 0; k < li.gram.rows(); ++k)
    CHECK(li.gram(k, k) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("connection form solves the vertical-part equation") {
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      RVector q = decreasing_vector(n);
      CMatrix g(n, n);
      {
        CMatrix xi = random_spin(n);
        for (int i = 0; i < n - 1; ++i) xi(i, i) = Complex(0, gauss(rng));
        Complex tr = xi.trace();
        xi(n - 1, n - 1) = -tr;
        g = matrix_exp(xi);
      }
      CMatrix a = adjoint_action(g, CMatrix(q.cast<Complex>().asDiagonal()));
      CMatrix v = random_herm(n);
      AlgebraElement av = connection_form(ConfigElement(a), ConfigElement(v));
      // zeta(A(v)) must reproduce the vertical part: zeta(A(zeta_X(a))) = zeta_X(a)
      // for X in m_a^perp; test the defining property zeta ... via idempotency:
      ConfigElement vert = fundamental_field(av, ConfigElement(a));
      AlgebraElement av2 = connection_form(ConfigElement(a), vert);
      CHECK((av.m - av2.m).norm() < 1e-9);
    }
  }
}

TEST_CASE("gauge fixing makes the first row real nonnegative; idempotent") {
  for (int rep = 0; rep < 20; ++rep) {
    CMatrix z = random_spin(4);
    auto [zf, gauge] = gauge_fix_spin(z);
    CHECK(is_anti_hermitian(zf));
    for (int j = 1; j < 4; ++j) {
      CHECK(zf(0, j).imag() == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(zf(0, j).real() >= 0.0);
    }
    // Gauge-invariant data preserved.
    CHECK((zf.cwiseAbs() - z.cwiseAbs()).norm() < kDerivedTol);
    auto [zf2, g2] = gauge_fix_spin(zf);
    CHECK((zf2 - zf).norm() < kStructTol);
    CHECK((g2 - Eigen::VectorXcd::Ones(4)).norm() < kStructTol);
  }
}

TEST_CASE("project_point worked example") {
  // a = [[0,1],[1,0]], alpha = diag(1,0): q = (1,-1), p = (1/2,1/2),
  // |Z_12| = 1, H = 1/2.
  CMatrix a(2, 2);
  a << 0, 1, 1, 0;
  CMatrix al(2, 2);
  al << 1, 0, 0, 0;
  ReducedPoint r = project_point(PhasePoint(ConfigElement(a), ConfigElement(al)));
  CHECK(r.q[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.q[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.p[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.p[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.z(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(reduced_hamiltonian(r) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("project then embed is a section (gauge-invariant round trip)") {
  for (int n = 2; n <= 4; ++n) {
    for (int rep = 0; rep < 20; ++rep) {
      ReducedPoint r = random_reduced(n);
      PhasePoint x = embed_reduced(r);
      ReducedPoint r2 = project_point(x);
      CHECK((r.q - r2.q).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((r.p - r2.p).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((r.z - r2.z).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("projection is conjugation-invariant in gauge-invariant data") {
  const int n = 3;
  ReducedPoint r = random_reduced(n);
  PhasePoint x = embed_reduced(r);
  CMatrix xi = random_spin(n);
  CMatrix g = matrix_exp(xi);
  PhasePoint moved(ConfigElement(adjoint_action(g, x.a.m)),
                   ConfigElement(adjoint_action(g, x.alpha.m)));
  ReducedPoint rm = project_point(moved);
  CHECK((r.q - rm.q).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((r.p - rm.p).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((r.z.cwiseAbs() - rm.z.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("energy matching: H(project(a, alpha)) = 1/2 Tr(alpha^2)") {
  std::mt19937_64 local(99);
  std::normal_distribution<double> g;
  int done = 0;
  while (done < 1000) {
    const int n = 2 + int(local() % 3);
    CMatrix a(n, n), al(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = Complex(g(local), g(local));
        al(i, j) = Complex(g(local), g(local));
      }
    a = 0.5 * (a + a.adjoint()).eval();
    al = 0.5 * (al + al.adjoint()).eval();
    try {
      ReducedPoint r =
          project_point(PhasePoint(ConfigElement(a), ConfigElement(al)));
      CHECK(std::abs(reduced_hamiltonian(r) - 0.5 * (al * al).trace().real()) <
            1e-10);
      ++done;
    } catch (const std::runtime_error&) {
      // degenerate sample, skip
    }
  }
}

TEST_CASE("Lax matrix: spectrum equals free momentum spectrum, 1/2 Tr L^2 = H") {
  const int n = 3;
  for (int rep = 0; rep < 20; ++rep) {
    ReducedPoint r = random_reduced(n);
    ConfigElement lax = lax_matrix(r);
    CHECK(0.5 * (lax.m * lax.m).trace().real() ==
          doctest::Approx(reduced_hamiltonian(r)).epsilon(1e-12));
    PhasePoint x = embed_reduced(r);
    Eigen::SelfAdjointEigenSolver<CMatrix> sa(x.alpha.m), sl(lax.m);
    CHECK((sa.eigenvalues() - sl.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("polar and rational Hamiltonian forms agree") {
  for (int n = 2; n <= 4; ++n) {
    RestrictedRootDatum datum = build_restricted_root_datum(n);
    for (int rep = 0; rep < 100; ++rep) {
      ReducedPoint r = random_reduced(n);
      CHECK(std::abs(reduced_hamiltonian(r) - polar_hamiltonian(r, datum)) <
            1e-12 * std::max(1.0, std::abs(reduced_hamiltonian(r))));
    }
  }
}

TEST_CASE("chamber regularity is enforced") {
  RVector q(2);
  q << 1.0, 1.0 - 1e-12;
  CHECK_THROWS(ReducedPoint(q, RVector::Zero(2), CMatrix::Zero(2, 2)));
  CMatrix a = CMatrix::Identity(2, 2);  // degenerate spectrum
  CHECK_THROWS(project_point(
      PhasePoint(ConfigElement(a), ConfigElement(CMatrix::Zero(2, 2)))));
}
