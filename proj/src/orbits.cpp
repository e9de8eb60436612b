#include "spincm/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace spincm {

OrbitSpec OrbitSpec::from_generator(AlgebraElement z0) {
  OrbitSpec spec;
  spec.generator = std::move(z0);
  return spec;
}

OrbitSpec OrbitSpec::from_rank_one(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  const double c = v.squaredNorm() / double(n);
  CMatrix z0 = Complex(0, 1) * (v * v.adjoint() - c * CMatrix::Identity(n, n));
  OrbitSpec spec;
  spec.generator = AlgebraElement(std::move(z0));
  spec.rank_one = RankOneData{v, c};
  return spec;
}

OrbitPoint orbit_point(const OrbitSpec& spec, const CMatrix& g) {
  return OrbitPoint{AlgebraElement(adjoint_action(g, spec.generator.m)), &spec};
}

namespace {

AlgebraElement random_algebra_element(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix xi = CMatrix::Zero(n, n);
  for (const auto& e : su_orthonormal_basis(n)) xi += scale * gauss(rng) * e;
  return AlgebraElement(std::move(xi));
}

}  // namespace

OrbitPoint random_orbit_sample(const OrbitSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = int(spec.n());
  return orbit_point(spec, matrix_exp(random_algebra_element(n, rng).m));
}

RVector orbit_spectrum(const CMatrix& z) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(Complex(0, -1) * z);
  return es.eigenvalues();
}

namespace {

double diag_objective(const CMatrix& z) {
  return z.diagonal().squaredNorm();
}

// Riemannian gradient of |diag(Z)|^2 along Z -> Ad(exp(tW)).Z under <,>_g.
CMatrix diag_gradient(const CMatrix& z) {
  const CMatrix d = z.diagonal().asDiagonal();
  CMatrix g = -2.0 * commutator(d, z);
  g = 0.5 * (g - g.adjoint().eval());  // structural cleanup only
  return g;
}

}  // namespace

OrbitPoint project_to_ann_m(const OrbitSpec& spec, std::uint64_t seed,
                            int max_restarts) {
  const int n = int(spec.n());
  std::mt19937_64 rng(seed);
  double best = std::numeric_limits<double>::infinity();
  constexpr double kConverged = 1e-18;  // squared residual
  for (int restart = 0; restart < max_restarts; ++restart) {
    CMatrix z = restart == 0
                    ? spec.generator.m
                    : adjoint_action(matrix_exp(random_algebra_element(n, rng).m),
                                     spec.generator.m);
    double f = diag_objective(z);
    double step = 0.5;
    for (int it = 0; it < 4000 && f > kConverged; ++it) {
      const CMatrix g = diag_gradient(z);
      const double gnorm2 = g.squaredNorm();
      if (gnorm2 < 1e-26) break;  // stationary, likely a saddle; restart
      // Backtracking along Z -> Ad(exp(-s g)).Z.
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        const CMatrix trial = adjoint_action(matrix_exp((-step * g).eval()), z);
        const double ft = diag_objective(trial);
        if (ft < f - 1e-4 * step * gnorm2) {
          z = trial;
          f = ft;
          step *= 1.5;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    best = std::min(best, f);
    if (f <= kConverged) {
      CMatrix out = z;
      out.diagonal().setZero();  // remove the residual structural dust
      out = 0.5 * (out - out.adjoint().eval());
      return OrbitPoint{AlgebraElement(std::move(out)), &spec};
    }
  }
  std::ostringstream msg;
  msg << "project_to_ann_m: no intersection with m^perp found after "
      << max_restarts << " restarts (best squared residual " << best << ")";
  throw AnnMProjectionError(msg.str(), best);
}

OrbitPoint minimal_orbit_normal_form(const OrbitSpec& spec) {
  if (!spec.rank_one)
    throw std::invalid_argument("minimal_orbit_normal_form: spec is not rank-one");
  const auto& [v, c] = *spec.rank_one;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(std::norm(v[i]) - c) > 1e-10)
      throw std::invalid_argument(
          "minimal_orbit_normal_form: |v_i|^2 != c, orbit does not meet m^perp "
          "in the all-ones normal form");
  const Eigen::Index n = v.size();
  CMatrix z = Complex(0, 1) * c *
              (CMatrix::Ones(n, n) - CMatrix::Identity(n, n));
  return OrbitPoint{AlgebraElement(std::move(z)), &spec};
}

double kks_form(const CMatrix& z, const CMatrix& x, const CMatrix& y) {
  return -(z * commutator(x, y)).trace().real();
}

double kks_form(const OrbitPoint& z, const AlgebraElement& x,
                const AlgebraElement& y) {
  return kks_form(z.value.m, x.m, y.m);
}

std::vector<double> casimirs(const CMatrix& z, int k_max) {
  if (k_max < 2) throw std::invalid_argument("casimirs: k_max must be >= 2");
  const CMatrix h = Complex(0, -1) * z;
  std::vector<double> out;
  CMatrix p = h * h;
  out.push_back(p.trace().real());
  for (int k = 3; k <= k_max; ++k) {
    p = p * h;
    out.push_back(p.trace().real());
  }
  return out;
}

}  // namespace spincm
