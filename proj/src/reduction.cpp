#include "spincm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spincm {

ReducedPoint::ReducedPoint(RVector q_, RVector p_, CMatrix z_,
                           Eigen::VectorXcd gauge_)
    : q(std::move(q_)), p(std::move(p_)), z(std::move(z_)), gauge(std::move(gauge_)) {
  const Eigen::Index n = q.size();
  if (p.size() != n || z.rows() != n || z.cols() != n)
    throw std::invalid_argument("ReducedPoint: dimension mismatch");
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    if (q[i] - q[i + 1] <= kEpsReg)
      throw std::invalid_argument("ReducedPoint: q is not strictly decreasing");
  if (!is_anti_hermitian(z))
    throw std::invalid_argument("ReducedPoint: Z is not anti-Hermitian");
  if (z.diagonal().cwiseAbs().maxCoeff() > kDerivedTol)
    throw std::invalid_argument("ReducedPoint: Z has nonzero diagonal");
  if (gauge.size() == 0) gauge = Eigen::VectorXcd::Ones(n);
}

AlgebraElement momentum_map(const PhasePoint& x) {
  return AlgebraElement(commutator(x.a.m, x.alpha.m));
}

namespace {

struct Frame {
  CMatrix g;
  RVector q;
};

Frame chamber_frame(const ConfigElement& a, double eps_reg) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.m);
  const Eigen::Index n = a.n();
  RVector q(n);
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {  // decreasing order
    q[i] = es.eigenvalues()[n - 1 - i];
    g.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < n; ++i) min_gap = std::min(min_gap, q[i] - q[i + 1]);
  if (min_gap <= eps_reg) {
    std::ostringstream msg;
    msg << "diagonalize_to_chamber: configuration is not regular (minimal "
           "eigenvalue gap "
        << min_gap << ")";
    throw std::invalid_argument(msg.str());
  }
  return {std::move(g), std::move(q)};
}

}  // namespace

std::pair<CMatrix, RVector> diagonalize_to_chamber(const ConfigElement& a,
                                                   double eps_reg) {
  Frame f = chamber_frame(a, eps_reg);
  return {std::move(f.g), std::move(f.q)};
}

LockedInertia locked_inertia(const ConfigElement& a) {
  const int n = int(a.n());
  Frame f = chamber_frame(a, kEpsReg);
  const RestrictedRootDatum datum = build_restricted_root_datum(n);
  std::vector<CMatrix> basis;
  for (std::size_t k = 0; k < datum.e_basis.size(); ++k) {
    basis.push_back(adjoint_action(f.g, datum.e_basis[k][0]));
    basis.push_back(adjoint_action(f.g, datum.e_basis[k][1]));
  }
  const std::size_t dim = basis.size();
  std::vector<CMatrix> zeta(dim);
  for (std::size_t k = 0; k < dim; ++k) zeta[k] = commutator(basis[k], a.m);
  Eigen::MatrixXd gram(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = (zeta[i] * zeta[j]).trace().real();
      gram(i, j) = v;
      gram(j, i) = v;
    }
  return LockedInertia{a, std::move(gram), std::move(basis)};
}

CMatrix connection_dual(const RVector& q, const CMatrix& z) {
  const Eigen::Index n = q.size();
  if (z.diagonal().cwiseAbs().maxCoeff() > kDerivedTol)
    throw std::invalid_argument("connection_dual: Z has nonzero diagonal");
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double gap = q[i] - q[j];
      if (std::abs(gap) < kEpsReg)
        throw std::invalid_argument("connection_dual: q is not regular");
      out(i, j) = z(i, j) / gap;
    }
  return out;
}

AlgebraElement connection_form(const ConfigElement& a, const ConfigElement& v) {
  LockedInertia inertia = locked_inertia(a);
  const std::size_t dim = inertia.basis.size();
  Eigen::VectorXd rhs(dim);
  for (std::size_t k = 0; k < dim; ++k)
    rhs[k] = (v.m * commutator(inertia.basis[k], a.m)).trace().real();
  const Eigen::VectorXd coeff = inertia.gram.ldlt().solve(rhs);
  CMatrix x = CMatrix::Zero(a.n(), a.n());
  for (std::size_t k = 0; k < dim; ++k) x += coeff[k] * inertia.basis[k];
  return AlgebraElement(std::move(x));
}

std::pair<CMatrix, Eigen::VectorXcd> gauge_fix_spin(const CMatrix& z) {
  const Eigen::Index n = z.rows();
  if (z.diagonal().cwiseAbs().maxCoeff() > kDerivedTol)
    throw std::invalid_argument("gauge_fix_spin: Z has nonzero diagonal");
  Eigen::VectorXcd d = Eigen::VectorXcd::Ones(n);
  for (Eigen::Index j = 1; j < n; ++j)
    if (std::abs(z(0, j)) > 1e-12) d[j] = z(0, j) / std::abs(z(0, j));
  // (D Z D*)_{0j} = Z_0j conj(d_j) = |Z_0j| for the fixed phases.
  CMatrix fixed = d.asDiagonal() * z * d.conjugate().asDiagonal();
  for (Eigen::Index j = 1; j < n; ++j)
    if (std::abs(z(0, j)) > 1e-12) {
      fixed(0, j) = std::abs(z(0, j));
      fixed(j, 0) = -std::abs(z(0, j));
    }
  return {std::move(fixed), std::move(d)};
}

ReducedPoint project_point(const PhasePoint& x) {
  Frame f = chamber_frame(x.a, kEpsReg);
  const CMatrix alpha_t = f.g.adjoint() * x.alpha.m * f.g;
  RVector p = alpha_t.diagonal().real();
  CMatrix z = commutator(CMatrix(f.q.cast<Complex>().asDiagonal()), alpha_t);
  z.diagonal().setZero();
  z = 0.5 * (z - z.adjoint().eval());
  auto [z_fixed, gauge] = gauge_fix_spin(z);
  return ReducedPoint(std::move(f.q), std::move(p), std::move(z_fixed),
                      std::move(gauge));
}

PhasePoint embed_reduced(const ReducedPoint& r) {
  CMatrix a = r.q.cast<Complex>().asDiagonal();
  CMatrix alpha = CMatrix(r.p.cast<Complex>().asDiagonal()) + connection_dual(r.q, r.z);
  return PhasePoint(ConfigElement(std::move(a)), ConfigElement(std::move(alpha)));
}

double reduced_hamiltonian(const ReducedPoint& r) {
  double h = 0.5 * r.p.squaredNorm();
  for (Eigen::Index i = 0; i < r.n(); ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      const double gap = r.q[i] - r.q[j];
      h += std::norm(r.z(i, j)) / (gap * gap);
    }
  return h;
}

ConfigElement lax_matrix(const ReducedPoint& r) {
  return ConfigElement(CMatrix(r.p.cast<Complex>().asDiagonal()) +
                       connection_dual(r.q, r.z));
}

double polar_hamiltonian(const ReducedPoint& r, const RestrictedRootDatum& datum) {
  if (datum.n != r.n())
    throw std::invalid_argument("polar_hamiltonian: dimension mismatch");
  double h = 0.5 * r.p.squaredNorm();
  for (std::size_t k = 0; k < datum.positive_restricted_roots.size(); ++k) {
    const double lam = datum.root_value(k, r.q);
    double zz = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double zki = -(r.z * datum.e_basis[k][i]).trace().real();
      zz += zki * zki;
    }
    h += 0.5 * zz / (lam * lam);
  }
  return h;
}

}  // namespace spincm
