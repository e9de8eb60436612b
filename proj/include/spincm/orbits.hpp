#pragma once

// Adjoint (= coadjoint, via the pairing) orbits of SU(n): sampling,
// intersection with the annihilator of m, minimal-orbit normal forms,
// Casimirs, and the KKS form.

#include "spincm/lie_core.hpp"

#include <cstdint>
#include <optional>

namespace spincm {

struct RankOneData {
  Eigen::VectorXcd v;
  double c = 0.0;  // c = <v,v>/n, so that Z0 = i(v v^dagger - c I) is traceless
};

/// Descriptor of the orbit through a generator Z0.
struct OrbitSpec {
  AlgebraElement generator;
  std::optional<RankOneData> rank_one;

  static OrbitSpec from_generator(AlgebraElement z0);
  static OrbitSpec from_rank_one(const Eigen::VectorXcd& v);
  Eigen::Index n() const { return generator.n(); }
};

struct OrbitPoint {
  AlgebraElement value;
  const OrbitSpec* spec = nullptr;
};

/// Z = Ad(g).Z0; spectrum is preserved.
OrbitPoint orbit_point(const OrbitSpec& spec, const CMatrix& g);

/// Orbit point at g = exp(xi), xi with iid Gaussian coefficients in an
/// orthonormal basis of su(n). Deterministic per seed; not Haar.
OrbitPoint random_orbit_sample(const OrbitSpec& spec, std::uint64_t seed);

/// Sorted eigenvalues of -iZ (real, since Z is anti-Hermitian).
RVector orbit_spectrum(const CMatrix& z);

struct AnnMProjectionError : std::runtime_error {
  double best_residual;
  AnnMProjectionError(const std::string& msg, double res)
      : std::runtime_error(msg), best_residual(res) {}
};

/// A point of O intersected with m^perp (zero-diagonal representatives),
/// found by Riemannian descent of |diag(Z)|^2 on the orbit with random
/// restarts. Throws AnnMProjectionError if no restart converges.
OrbitPoint project_to_ann_m(const OrbitSpec& spec, std::uint64_t seed,
                            int max_restarts = 50);

/// The all-ones off-diagonal normal form i c ((1)_ij - I) of a minimal
/// rank-one orbit with |v_i|^2 = c for all i.
OrbitPoint minimal_orbit_normal_form(const OrbitSpec& spec);

/// KKS symplectic form: <Z, [X, Y]>_g on tangent generators X, Y.
double kks_form(const OrbitPoint& z, const AlgebraElement& x,
                const AlgebraElement& y);
double kks_form(const CMatrix& z, const CMatrix& x, const CMatrix& y);

/// Normalized real traces Re Tr((-iZ)^k), k = 2..k_max; constant on the orbit.
std::vector<double> casimirs(const CMatrix& z, int k_max);

}  // namespace spincm
