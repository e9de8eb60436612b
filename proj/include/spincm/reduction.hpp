#pragma once

// Momentum map, mechanical connection, slice coordinates on
// T*V //_O G = T*C_r x (O //_0 M), reduced Hamiltonian, Lax matrix.

#include "spincm/lie_core.hpp"

namespace spincm {

/// A point (a, alpha) of T*V = V x V, momentum identified via the trace form.
struct PhasePoint {
  ConfigElement a;
  ConfigElement alpha;

  PhasePoint() = default;
  PhasePoint(ConfigElement pos, ConfigElement mom)
      : a(std::move(pos)), alpha(std::move(mom)) {
    if (a.n() != alpha.n())
      throw std::invalid_argument("PhasePoint: dimension mismatch");
  }
  Eigen::Index n() const { return a.n(); }
};

/// Chamber position q (strictly decreasing), slice momentum p, and a
/// gauge-fixed spin Z in O intersect m^perp.
struct ReducedPoint {
  RVector q;
  RVector p;
  CMatrix z;                 // anti-Hermitian, zero diagonal
  Eigen::VectorXcd gauge;    // diagonal unitary applied by gauge_fix_spin

  ReducedPoint() = default;
  ReducedPoint(RVector q_, RVector p_, CMatrix z_, Eigen::VectorXcd gauge_ = {});
  Eigen::Index n() const { return q.size(); }
};

/// Locked inertia tensor at q: Gram matrix of (X,Y) -> <[X,q],[Y,q]>_V on
/// m^perp in the restricted-root E-basis.
struct LockedInertia {
  ConfigElement base;
  Eigen::MatrixXd gram;
  std::vector<CMatrix> basis;  // orthonormal basis of m_a^perp used for gram
};

/// mu(a, alpha) = [a, alpha], anti-Hermitian and traceless.
AlgebraElement momentum_map(const PhasePoint& x);

LockedInertia locked_inertia(const ConfigElement& q);

/// A_q^*(Z): Hermitian with entries Z_ij/(q_i - q_j) off the diagonal.
CMatrix connection_dual(const RVector& q, const CMatrix& z);

/// Mechanical connection A(v) in m_a^perp with [A(v), a] = vertical part of v,
/// obtained by solving the locked-inertia linear system.
AlgebraElement connection_form(const ConfigElement& a, const ConfigElement& v);

/// a = g diag(q) g^dagger with q strictly decreasing; throws below eps_reg gap.
std::pair<CMatrix, RVector> diagonalize_to_chamber(const ConfigElement& a,
                                                   double eps_reg = kEpsReg);

/// Slice coordinates of a phase point: q chamber position, p = diag part of
/// the frame-transported momentum, Z = [diag(q), g^dagger alpha g], gauge-fixed.
ReducedPoint project_point(const PhasePoint& x);

/// Section of the orbit projection: (diag(q), diag(p) + A_q^*(Z)).
PhasePoint embed_reduced(const ReducedPoint& r);

/// Conjugate Z by a diagonal unitary so first-row entries are real >= 0;
/// phases of negligible entries (<= 1e-12) are left at 1. Idempotent.
std::pair<CMatrix, Eigen::VectorXcd> gauge_fix_spin(const CMatrix& z);

/// H = 1/2 sum p_i^2 + sum_{i>j} |Z_ij|^2/(q_i - q_j)^2.
double reduced_hamiltonian(const ReducedPoint& r);

/// L = diag(p) + A_q^*(Z); 1/2 Tr(L^2) equals the reduced Hamiltonian.
ConfigElement lax_matrix(const ReducedPoint& r);

/// Same Hamiltonian evaluated through the restricted-root expansion
/// 1/2 sum p^2 + 1/2 sum_lambda (sum_i (z_lambda^i)^2)/lambda(q)^2.
double polar_hamiltonian(const ReducedPoint& r, const RestrictedRootDatum& datum);

}  // namespace spincm
