#pragma once

// Numerical verification of the geometric identities behind the reduction:
// connection axioms, the Weinstein chart map and its symplectic-form formula
// (including the curvature term), and the defining property of the reduced
// symplectic form. All exterior-calculus checks are pointwise bilinear-form
// comparisons along explicit curves.

#include "spincm/reduction.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace spincm {

/// Chart point of the Weinstein space W: slice coordinate s (decreasing),
/// group coordinate xi in m^perp via exp, quotient covector eta, and
/// lam in Ann g_q realized as a zero-diagonal element of m^perp.
struct WeinsteinChartPoint {
  RVector s;
  CMatrix xi;
  RVector eta;
  CMatrix lam;

  WeinsteinChartPoint(RVector s_, CMatrix xi_, RVector eta_, CMatrix lam_);
  Eigen::Index n() const { return s.size(); }
};

/// Tangent to the chart: slice/covector components plus the vertical
/// direction dxi = Z in m^perp and the Ad-transported dlam.
struct ChartTangent {
  RVector ds;
  CMatrix dxi;
  RVector deta;
  CMatrix dlam;
};

/// psi: (q, eta, lam) -> (q, (T_q pi)^* eta + A_q^*(lam)) in the moving frame
/// g = exp(xi).
PhasePoint weinstein_map(const WeinsteinChartPoint& w);

struct IdentityReport {
  std::map<std::string, double> max_residuals;
  bool pass(double tol = 1e-9) const {
    for (const auto& [_, v] : max_residuals)
      if (!(v <= tol)) return false;
    return true;
  }
};

/// Max residuals over random regular samples of: zeta = zeta.A.zeta,
/// mu_q o A_q^* = id, A_q^* o mu_q = id on vertical covectors,
/// A-equivariance, and locked-inertia positive definiteness.
IdentityReport check_connection_identities(int n, std::uint64_t seed, int samples);

/// Curv^A(q'_1, q'_2) = dA(v1, v2) - [A(v1), A(v2)] at the base (s, xi), with
/// dA by central differences along constant-coefficient chart extensions.
/// v1, v2 are the q-parts (ds, Z) of chart tangents.
AlgebraElement curvature_fd(const RVector& s, const CMatrix& xi,
                            const RVector& ds1, const CMatrix& z1,
                            const RVector& ds2, const CMatrix& z2,
                            double h = 1e-5);

struct FormCheck {
  double lhs;
  double rhs;
  double residual;
};

/// Compares (psi^* Omega)(t1, t2) with the canonical T*Sigma form plus the
/// dB coordinate formula (transport, curvature, and bracket terms) in the
/// orientation fixed by the trace pairing.
FormCheck verify_weinstein_form(const WeinsteinChartPoint& w,
                                const ChartTangent& t1, const ChartTangent& t2,
                                double h = 1e-5);

/// A tangent to mu^-1(O) at Ad(g).embed_reduced(r), presented through its
/// generating curve: chamber/slice motion (dq, dp), free-flow weight, gauge
/// generator, and an orbit direction Y with diag([Y, Z]) = 0.
struct ConstrainedTangent {
  RVector dq;
  RVector dp;
  double free_weight = 0.0;
  CMatrix gauge_gen;  // X in su(n)
  CMatrix spin_gen;   // Y in su(n), tangent to O cap m^perp at r.z
};

/// Project Y onto the subspace with diag([Y, z]) = 0, so that the spin
/// component of the generated curve stays in m^perp to first order.
CMatrix project_spin_generator(const CMatrix& y, const CMatrix& z);

/// Checks Omega(u1,u2) + omega^O(T mu.u1, T mu.u2) against the product form
/// Omega^{C_r} + omega^O on the projections (FD of project_point), with
/// omega^O in the kks_form orientation.
FormCheck verify_reduced_form(const ReducedPoint& r, const CMatrix& g,
                              const ConstrainedTangent& c1,
                              const ConstrainedTangent& c2, double h = 1e-5);

}  // namespace spincm
