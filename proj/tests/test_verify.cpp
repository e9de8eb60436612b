#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spincm/verify.hpp"

#include <random>

using namespace spincm;

namespace {

std::mt19937_64 rng(77);
std::normal_distribution<double> gauss;

CMatrix random_mperp(int n) {
  CMatrix z = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      z(i, j) = Complex(gauss(rng), gauss(rng));
      z(j, i) = -std::conj(z(i, j));
    }
  return z;
}

CMatrix random_su(int n) {
  CMatrix x = random_mperp(n);
  double tr = 0;
  for (int i = 0; i < n - 1; ++i) {
    x(i, i) = Complex(0, gauss(rng));
    tr += x(i, i).imag();
  }
  x(n - 1, n - 1) = Complex(0, -tr);
  return x;
}

RVector chamber(int n, double gap = 0.6) {
  RVector s(n);
  double cur = double(n);
  for (int i = 0; i < n; ++i) {
    s[i] = cur;
    cur -= gap + std::abs(gauss(rng));
  }
  return s;
}

WeinsteinChartPoint random_chart(int n) {
  return WeinsteinChartPoint(chamber(n), 0.3 * random_mperp(n),
                             RVector::Random(n), random_mperp(n));
}

ChartTangent random_tangent(int n, bool vertical) {
  ChartTangent t;
  t.ds = RVector::Random(n);
  t.dxi = vertical ? CMatrix(random_mperp(n)) : CMatrix(CMatrix::Zero(n, n));
  t.deta = RVector::Random(n);
  t.dlam = random_mperp(n);
  return t;
}

}  // namespace

TEST_CASE("weinstein map lands on the expected phase point") {
  const int n = 3;
  WeinsteinChartPoint w = random_chart(n);
  PhasePoint x = weinstein_map(w);
  CHECK(is_hermitian(x.a.m));
  CHECK(is_hermitian(x.alpha.m));
  // At xi = 0 the configuration is diag(s) and the momentum is
  // diag(eta) + A_s^*(lam).
  WeinsteinChartPoint w0(w.s, CMatrix::Zero(n, n), w.eta, w.lam);
  PhasePoint x0 = weinstein_map(w0);
  CHECK((x0.a.m - CMatrix(w.s.cast<Complex>().asDiagonal())).norm() < kStructTol);
  CMatrix expect = w.eta.cast<Complex>().asDiagonal();
  expect += connection_dual(w.s, w.lam);
  CHECK((x0.alpha.m - expect).norm() < kStructTol);
}

TEST_CASE("connection identity suite") {
  for (int n = 2; n <= 4; ++n) {
    IdentityReport rep = check_connection_identities(n, 17 + n, 100);
    for (const auto& [name, res] : rep.max_residuals) {
      INFO(name);
      CHECK(res < 1e-9);
    }
    CHECK(rep.pass(1e-9));
  }
}

TEST_CASE("curvature is antisymmetric and vanishes for aligned arguments") {
  const int n = 3;
  RVector s = chamber(n);
  CMatrix xi = 0.2 * random_mperp(n);
  RVector ds1 = RVector::Random(n), ds2 = RVector::Random(n);
  CMatrix z1 = random_mperp(n), z2 = random_mperp(n);
  AlgebraElement c12 = curvature_fd(s, xi, ds1, z1, ds2, z2);
  AlgebraElement c21 = curvature_fd(s, xi, ds2, z2, ds1, z1);
  CHECK((c12.m + c21.m).norm() < 1e-6);
  AlgebraElement c11 = curvature_fd(s, xi, ds1, z1, ds1, z1);
  CHECK(c11.m.norm() < 1e-6);
  // Horizontal slice directions alone (z = 0) have zero curvature: A vanishes
  // along the chamber and dA picks up no ds-ds component.
  AlgebraElement chh = curvature_fd(s, xi, ds1, CMatrix::Zero(n, n), ds2,
                                    CMatrix::Zero(n, n));
  CHECK(chh.m.norm() < 1e-6);
}

TEST_CASE("weinstein form identity on random chart pairs") {
  for (int n = 2; n <= 3; ++n) {
    double worst = 0;
    for (int rep = 0; rep < 100; ++rep) {
      WeinsteinChartPoint w = random_chart(n);
      // Half the pairs exercise the vertical terms.
      const bool vertical = rep % 2 == 0;
      FormCheck fc = verify_weinstein_form(w, random_tangent(n, vertical),
                                           random_tangent(n, vertical), 1e-5);
      worst = std::max(worst, fc.residual);
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("reduced-form defining property on constrained pairs") {
  for (int n = 2; n <= 3; ++n) {
    double worst = 0;
    for (int rep = 0; rep < 50; ++rep) {
      RVector q = chamber(n), p = RVector::Random(n);
      auto [zf, gauge] = gauge_fix_spin(random_mperp(n));
      ReducedPoint r(q, p, zf, gauge);
      CMatrix g = matrix_exp(CMatrix(0.2 * random_su(n)));
      auto make = [&] {
        ConstrainedTangent c;
        c.dq = 0.3 * RVector::Random(n);
        c.dp = RVector::Random(n);
        c.free_weight = gauss(rng);
        c.gauge_gen = random_su(n);
        c.spin_gen = project_spin_generator(random_su(n), r.z);
        return c;
      };
      FormCheck fc = verify_reduced_form(r, g, make(), make(), 1e-5);
      worst = std::max(worst, fc.residual);
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("project_spin_generator enforces diag([Y, z]) = 0") {
  const int n = 4;
  CMatrix z = random_mperp(n);
  for (int rep = 0; rep < 10; ++rep) {
    CMatrix y = project_spin_generator(random_su(n), z);
    CHECK(is_anti_hermitian(y));
    CHECK(commutator(y, z).diagonal().cwiseAbs().maxCoeff() < 1e-10);
  }
  // Projection is idempotent.
  CMatrix y = project_spin_generator(random_su(n), z);
  CHECK((project_spin_generator(y, z) - y).norm() < 1e-10);
}

TEST_CASE("chart point validation") {
  RVector bad(2);
  bad << 1.0, 1.0;  // not strictly decreasing
  CHECK_THROWS(WeinsteinChartPoint(bad, CMatrix::Zero(2, 2), RVector::Zero(2),
                                   CMatrix::Zero(2, 2)));
  RVector s(2);
  s << 1.0, -1.0;
  CMatrix not_mperp = CMatrix::Zero(2, 2);
  not_mperp(0, 0) = Complex(0, 1);
  not_mperp(1, 1) = Complex(0, -1);
  CHECK_THROWS(WeinsteinChartPoint(s, CMatrix::Zero(2, 2), RVector::Zero(2),
                                   not_mperp));
}
