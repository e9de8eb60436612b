#include "spincm/verify.hpp"

#include "spincm/dynamics.hpp"
#include "spincm/orbits.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace spincm {

namespace {

void require_zero_diag(const CMatrix& z, const char* what) {
  if (z.size() && z.diagonal().cwiseAbs().maxCoeff() > kDerivedTol)
    throw std::invalid_argument(std::string(what) + ": nonzero diagonal");
}

CMatrix diag_of(const RVector& v) {
  return CMatrix(v.cast<Complex>().asDiagonal());
}

double canonical_form(const CMatrix& da1, const CMatrix& dalpha1,
                      const CMatrix& da2, const CMatrix& dalpha2) {
  return (dalpha2 * da1).trace().real() - (dalpha1 * da2).trace().real();
}

double algebra_pairing(const CMatrix& x, const CMatrix& y) {
  return -(x * y).trace().real();
}

}  // namespace

WeinsteinChartPoint::WeinsteinChartPoint(RVector s_, CMatrix xi_, RVector eta_,
                                         CMatrix lam_)
    : s(std::move(s_)), xi(std::move(xi_)), eta(std::move(eta_)), lam(std::move(lam_)) {
  for (Eigen::Index i = 0; i + 1 < s.size(); ++i)
    if (s[i] - s[i + 1] <= kEpsReg)
      throw std::invalid_argument("WeinsteinChartPoint: s is not strictly decreasing");
  if (!is_anti_hermitian(xi) || !is_anti_hermitian(lam))
    throw std::invalid_argument("WeinsteinChartPoint: xi and lam must be anti-Hermitian");
  require_zero_diag(xi, "WeinsteinChartPoint xi");
  require_zero_diag(lam, "WeinsteinChartPoint lam");
}

PhasePoint weinstein_map(const WeinsteinChartPoint& w) {
  const CMatrix g = matrix_exp(w.xi);
  const CMatrix a = adjoint_action(g, diag_of(w.s));
  const CMatrix alpha =
      adjoint_action(g, diag_of(w.eta) + connection_dual(w.s, w.lam));
  return PhasePoint(ConfigElement(a), ConfigElement(alpha));
}

namespace {

// Phase point of the chart curve through w with tangent t at parameter tau.
PhasePoint chart_curve(const WeinsteinChartPoint& w, const ChartTangent& t,
                       double tau) {
  const CMatrix g = matrix_exp((tau * t.dxi).eval()) * matrix_exp(w.xi);
  const RVector s = w.s + tau * t.ds;
  const CMatrix a = adjoint_action(g, diag_of(s));
  const CMatrix alpha = adjoint_action(
      g, diag_of((w.eta + tau * t.deta).eval()) +
             connection_dual(s, (w.lam + tau * t.dlam).eval()));
  return PhasePoint(ConfigElement(a), ConfigElement(alpha));
}

struct PhaseTangent {
  CMatrix da;
  CMatrix dalpha;
};

PhaseTangent chart_pushforward(const WeinsteinChartPoint& w, const ChartTangent& t,
                               double h) {
  const PhasePoint plus = chart_curve(w, t, h);
  const PhasePoint minus = chart_curve(w, t, -h);
  return {(plus.a.m - minus.a.m) / (2 * h), (plus.alpha.m - minus.alpha.m) / (2 * h)};
}

// Right-trivialized differential of exp at small m: (e^{ad m} - 1)/ad m (Z).
CMatrix dexp_right(const CMatrix& m, const CMatrix& z) {
  CMatrix term = z, sum = z;
  for (int k = 1; k <= 4; ++k) {
    term = commutator(m, term) / double(k + 1);
    sum += term;
  }
  return sum;
}

}  // namespace

AlgebraElement curvature_fd(const RVector& s, const CMatrix& xi,
                            const RVector& ds1, const CMatrix& z1,
                            const RVector& ds2, const CMatrix& z2, double h) {
  if (h < 1e-12) throw std::invalid_argument("curvature_fd: step underflow");
  const CMatrix g0 = matrix_exp(xi);
  const CMatrix q0 = adjoint_action(g0, diag_of(s));

  // Chart for Q near q0: (sigma, m) -> Ad(exp(m) g0) diag(sigma); constant-
  // coefficient fields in these coordinates commute, so
  // dA(V1,V2) = V1(A(V2)) - V2(A(V1)).
  auto point_at = [&](const RVector& sigma, const CMatrix& m) {
    return adjoint_action(matrix_exp(m) * g0, diag_of(sigma));
  };
  auto field_at = [&](const RVector& sigma, const CMatrix& m, const RVector& ds,
                      const CMatrix& z) {
    const CMatrix em_g = matrix_exp(m) * g0;
    const CMatrix q = adjoint_action(em_g, diag_of(sigma));
    return CMatrix(adjoint_action(em_g, diag_of(ds)) +
                   commutator(dexp_right(m, z), q));
  };
  auto a_of = [&](const RVector& sigma, const CMatrix& m, const RVector& ds,
                  const CMatrix& z) {
    return connection_form(ConfigElement(point_at(sigma, m)),
                           ConfigElement(field_at(sigma, m, ds, z)))
        .m;
  };

  const CMatrix d1_a2 =
      (a_of(s + h * ds1, (h * z1).eval(), ds2, z2) -
       a_of(s - h * ds1, (-h * z1).eval(), ds2, z2)) /
      (2 * h);
  const CMatrix d2_a1 =
      (a_of(s + h * ds2, (h * z2).eval(), ds1, z1) -
       a_of(s - h * ds2, (-h * z2).eval(), ds1, z1)) /
      (2 * h);

  const CMatrix a1 = connection_form(ConfigElement(q0),
                                     ConfigElement(field_at(s, CMatrix::Zero(s.size(), s.size()), ds1, z1))).m;
  const CMatrix a2 = connection_form(ConfigElement(q0),
                                     ConfigElement(field_at(s, CMatrix::Zero(s.size(), s.size()), ds2, z2))).m;

  CMatrix curv = d1_a2 - d2_a1 - commutator(a1, a2);
  curv = 0.5 * (curv - curv.adjoint().eval());
  curv -= (curv.trace() / double(s.size())) * CMatrix::Identity(s.size(), s.size());
  return AlgebraElement(std::move(curv));
}

FormCheck verify_weinstein_form(const WeinsteinChartPoint& w,
                                const ChartTangent& t1, const ChartTangent& t2,
                                double h) {
  const PhaseTangent u1 = chart_pushforward(w, t1, h);
  const PhaseTangent u2 = chart_pushforward(w, t2, h);
  const double lhs = canonical_form(u1.da, u1.dalpha, u2.da, u2.dalpha);

  const CMatrix g = matrix_exp(w.xi);
  const CMatrix lam_g = adjoint_action(g, w.lam);

  // Transported lambda-derivatives along the chart curves.
  const CMatrix dlam1 = commutator(t1.dxi, lam_g) + adjoint_action(g, t1.dlam);
  const CMatrix dlam2 = commutator(t2.dxi, lam_g) + adjoint_action(g, t2.dlam);

  const CMatrix curv =
      curvature_fd(w.s, w.xi, t1.ds, t1.dxi, t2.ds, t2.dxi, h).m;

  const double db = algebra_pairing(dlam1, t2.dxi) - algebra_pairing(dlam2, t1.dxi) +
                    algebra_pairing(lam_g, curv) +
                    algebra_pairing(lam_g, commutator(t1.dxi, t2.dxi));

  const double quotient_form = t2.deta.dot(t1.ds) - t1.deta.dot(t2.ds);
  const double rhs = quotient_form + db;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

namespace {

struct RandomSource {
  std::mt19937_64 rng;
  std::normal_distribution<double> gauss{0.0, 1.0};

  explicit RandomSource(std::uint64_t seed) : rng(seed) {}

  double operator()() { return gauss(rng); }

  RVector vec(int n) {
    RVector v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    return v;
  }

  // Strictly decreasing with gaps >= 0.3.
  RVector chamber(int n) {
    RVector q(n);
    double cur = gauss(rng);
    for (int i = 0; i < n; ++i) {
      q[i] = cur;
      cur -= 0.3 + std::abs(gauss(rng));
    }
    return q;
  }

  CMatrix algebra(int n) {
    CMatrix x = CMatrix::Zero(n, n);
    for (const auto& e : su_orthonormal_basis(n)) x += gauss(rng) * e;
    return x;
  }

  // Zero-diagonal anti-Hermitian (element of m^perp).
  CMatrix m_perp(int n) {
    CMatrix x = algebra(n);
    x.diagonal().setZero();
    return x;
  }

  CMatrix hermitian(int n) {
    CMatrix x(n, n);
    for (int i = 0; i < n; ++i) {
      x(i, i) = gauss(rng);
      for (int j = i + 1; j < n; ++j) {
        x(i, j) = Complex(gauss(rng), gauss(rng));
        x(j, i) = std::conj(x(i, j));
      }
    }
    return 0.5 * (x + x.adjoint().eval());
  }

  CMatrix unitary(int n) { return matrix_exp(algebra(n)); }

  // Random regular Hermitian with controlled eigenvalue gaps.
  CMatrix regular_config(int n) {
    return adjoint_action(unitary(n), diag_of(chamber(n)));
  }
};

}  // namespace

IdentityReport check_connection_identities(int n, std::uint64_t seed, int samples) {
  RandomSource rnd(seed);
  IdentityReport rep;
  double r_zaz = 0, r_mu_dual = 0, r_dual_mu = 0, r_equiv = 0, r_pd = 0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const ConfigElement a(rnd.regular_config(n));
    const CMatrix x = rnd.algebra(n);
    // zeta = zeta o A o zeta
    const CMatrix v = commutator(x, a.m);
    const CMatrix xp = connection_form(a, ConfigElement(v)).m;
    r_zaz = std::max(r_zaz, (commutator(xp, a.m) - v).cwiseAbs().maxCoeff());

    // mu_q o A_q^* = id on m^perp
    const RVector q = rnd.chamber(n);
    const CMatrix z = rnd.m_perp(n);
    const CMatrix dual = connection_dual(q, z);
    r_mu_dual = std::max(
        r_mu_dual, (commutator(diag_of(q), dual) - z).cwiseAbs().maxCoeff());

    // A_q^* o mu_q = id on vertical covectors
    const CMatrix vert = commutator(z, diag_of(q));
    const CMatrix back = connection_dual(q, commutator(diag_of(q), vert));
    r_dual_mu = std::max(r_dual_mu, (back - vert).cwiseAbs().maxCoeff());

    // equivariance A_{g.a}(g.v) = Ad(g) A_a(v)
    const CMatrix g = rnd.unitary(n);
    const CMatrix w = rnd.hermitian(n);
    const CMatrix lhs =
        connection_form(ConfigElement(adjoint_action(g, a.m)),
                        ConfigElement(adjoint_action(g, w)))
            .m;
    const CMatrix rhs = adjoint_action(g, connection_form(a, ConfigElement(w)).m);
    r_equiv = std::max(r_equiv, (lhs - rhs).cwiseAbs().maxCoeff());

    // locked-inertia positive definiteness
    const Eigen::VectorXd eigs =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(locked_inertia(a).gram)
            .eigenvalues();
    min_eig = std::min(min_eig, eigs.minCoeff());
    r_pd = std::max(r_pd, std::max(0.0, -eigs.minCoeff()));
  }
  rep.max_residuals["zeta_A_zeta"] = r_zaz;
  rep.max_residuals["mu_after_dual"] = r_mu_dual;
  rep.max_residuals["dual_after_mu"] = r_dual_mu;
  rep.max_residuals["equivariance"] = r_equiv;
  rep.max_residuals["inertia_positive_definite"] = r_pd;
  return rep;
}

CMatrix project_spin_generator(const CMatrix& y, const CMatrix& z) {
  const int n = int(z.rows());
  const std::vector<CMatrix> basis = su_orthonormal_basis(n);
  const int dim = int(basis.size());
  // Rows: real/imag parts of diag([F_k, z]); null-space projection of y.
  Eigen::MatrixXd constraints(2 * n, dim);
  for (int k = 0; k < dim; ++k) {
    const Eigen::VectorXcd d = commutator(basis[k], z).diagonal();
    for (int i = 0; i < n; ++i) {
      constraints(2 * i, k) = d[i].real();
      constraints(2 * i + 1, k) = d[i].imag();
    }
  }
  Eigen::VectorXd coeff(dim);
  for (int k = 0; k < dim; ++k) coeff[k] = algebra_pairing(y, basis[k]);
  // Subtract the row-space component: solve min |C^T w - ...| via SVD.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double thresh = 1e-10 * svd.singularValues().maxCoeff();
  Eigen::VectorXd projected = coeff;
  for (int k = 0; k < svd.singularValues().size(); ++k) {
    if (svd.singularValues()[k] <= thresh) continue;
    const Eigen::VectorXd row_dir = svd.matrixV().col(k);
    projected -= row_dir.dot(projected) * row_dir;
  }
  CMatrix out = CMatrix::Zero(n, n);
  for (int k = 0; k < dim; ++k) out += projected[k] * basis[k];
  return out;
}

namespace {

// Least-squares generator X with [X, z] = zdot; returns the KKS pairing
// ingredient. Throws if the solve leaves a large residual.
CMatrix solve_orbit_generator(const CMatrix& z, const CMatrix& zdot, double tol) {
  const int n = int(z.rows());
  const std::vector<CMatrix> basis = su_orthonormal_basis(n);
  const int dim = int(basis.size());
  Eigen::MatrixXd m(dim, dim);
  Eigen::VectorXd b(dim);
  for (int k = 0; k < dim; ++k) {
    const CMatrix col = commutator(basis[k], z);
    for (int l = 0; l < dim; ++l) m(l, k) = algebra_pairing(col, basis[l]);
    b[k] = algebra_pairing(zdot, basis[k]);
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
  const Eigen::VectorXd x = cod.solve(b);
  if ((m * x - b).norm() > tol)
    throw std::runtime_error(
        "verify_reduced_form: orbit-tangency least-squares solve failed "
        "(residual " +
        std::to_string((m * x - b).norm()) + ")");
  CMatrix out = CMatrix::Zero(n, n);
  for (int k = 0; k < dim; ++k) out += x[k] * basis[k];
  return out;
}

PhasePoint constrained_curve(const ReducedPoint& r, const CMatrix& g,
                             const ConstrainedTangent& c, double tau) {
  CMatrix z = adjoint_action(matrix_exp((tau * c.spin_gen).eval()), r.z);
  z.diagonal().setZero();  // retraction onto m^perp; O(tau^2) off the orbit
  z = 0.5 * (z - z.adjoint().eval());
  const ReducedPoint rt(r.q + tau * c.dq, r.p + tau * c.dp, std::move(z));
  const PhasePoint y = free_flow(embed_reduced(rt), tau * c.free_weight);
  const CMatrix gt = matrix_exp((tau * c.gauge_gen).eval()) * g;
  return PhasePoint(ConfigElement(adjoint_action(gt, y.a.m)),
                    ConfigElement(adjoint_action(gt, y.alpha.m)));
}

}  // namespace

FormCheck verify_reduced_form(const ReducedPoint& r, const CMatrix& g,
                              const ConstrainedTangent& c1,
                              const ConstrainedTangent& c2, double h) {
  const PhasePoint x = constrained_curve(r, g, c1, 0.0);

  auto tangent = [&](const ConstrainedTangent& c) {
    const PhasePoint plus = constrained_curve(r, g, c, h);
    const PhasePoint minus = constrained_curve(r, g, c, -h);
    return PhaseTangent{(plus.a.m - minus.a.m) / (2 * h),
                        (plus.alpha.m - minus.alpha.m) / (2 * h)};
  };
  const PhaseTangent u1 = tangent(c1);
  const PhaseTangent u2 = tangent(c2);

  // Upstairs: Omega(u1, u2) + omega^O(T mu.u1, T mu.u2) at Z = mu(x), with
  // omega^O(zeta_X, zeta_Y) = <Z, [X, Y]>_g in the orientation fixed by kks_form.
  const CMatrix z = commutator(x.a.m, x.alpha.m);
  const CMatrix zdot1 = commutator(u1.da, x.alpha.m) + commutator(x.a.m, u1.dalpha);
  const CMatrix zdot2 = commutator(u2.da, x.alpha.m) + commutator(x.a.m, u2.dalpha);
  const double ls_tol = 1e-4 * (1.0 + zdot1.norm() + zdot2.norm());
  const CMatrix x1 = solve_orbit_generator(z, zdot1, ls_tol);
  const CMatrix x2 = solve_orbit_generator(z, zdot2, ls_tol);
  const double lhs =
      canonical_form(u1.da, u1.dalpha, u2.da, u2.dalpha) + kks_form(z, x1, x2);

  // Downstairs: FD of project_point along the same curves.
  auto reduced_tangent = [&](const ConstrainedTangent& c) {
    const ReducedPoint plus = project_point(constrained_curve(r, g, c, h));
    const ReducedPoint minus = project_point(constrained_curve(r, g, c, -h));
    return std::make_tuple(RVector((plus.q - minus.q) / (2 * h)),
                           RVector((plus.p - minus.p) / (2 * h)),
                           CMatrix((plus.z - minus.z) / (2 * h)));
  };
  const auto [dq1, dp1, dz1] = reduced_tangent(c1);
  const auto [dq2, dp2, dz2] = reduced_tangent(c2);
  const ReducedPoint r0 = project_point(x);
  const CMatrix y1 = solve_orbit_generator(r0.z, dz1, ls_tol);
  const CMatrix y2 = solve_orbit_generator(r0.z, dz2, ls_tol);
  const double rhs =
      (dp2.dot(dq1) - dp1.dot(dq2)) + kks_form(r0.z, y1, y2);

  return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace spincm
