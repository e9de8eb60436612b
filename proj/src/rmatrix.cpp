#include "spincm/rmatrix.hpp"

#include <cmath>
#include <vector>

namespace spincm {

std::vector<CMatrix> cartan_orthonormal_basis(int n) {
  std::vector<CMatrix> basis;
  for (int k = 1; k < n; ++k) {
    CMatrix d = CMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) d(i, i) = norm;
    d(k, k) = -double(k) * norm;
    basis.push_back(std::move(d));
  }
  return basis;
}

namespace {

using Triplet = Eigen::Triplet<Complex>;

void check_regular(int n, const RVector& q) {
  if (q.size() != n) throw std::invalid_argument("r-matrix: base point size mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(q[i] - q[j]) < kEpsReg)
        throw std::invalid_argument("r-matrix: base point is not regular");
}

// kron(x, y) entries of a pure tensor with both factors diagonal-free
// elementary E_ij x E_kl: single nonzero at (i n + k, j n + l).
void add_elementary_pair(std::vector<Triplet>& trips, int n, int i, int j,
                         Complex coeff) {
  // E_ij x E_ji
  trips.emplace_back(i * n + j, j * n + i, coeff);
}

void add_diag_pair(std::vector<Triplet>& trips, int n, const CMatrix& x,
                   const CMatrix& y, Complex coeff) {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Complex v = coeff * x(a, a) * y(b, b);
      if (v != Complex(0, 0)) trips.emplace_back(a * n + b, a * n + b, v);
    }
}

SparseTensor from_triplets(int dim, std::vector<Triplet>& trips) {
  SparseTensor t(dim, dim);
  t.setFromTriplets(trips.begin(), trips.end());
  return t;
}

}  // namespace

SparseTensor casimir_tensor(int n) {
  std::vector<Triplet> trips;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) add_elementary_pair(trips, n, i, j, 1.0);
  for (const CMatrix& x : cartan_orthonormal_basis(n))
    add_diag_pair(trips, n, x, x, 1.0);
  return from_triplets(n * n, trips);
}

CMatrix contract_second(const SparseTensor& t, int n, const CMatrix& lambda) {
  CMatrix out = CMatrix::Zero(n, n);
  for (int outer = 0; outer < t.outerSize(); ++outer)
    for (SparseTensor::InnerIterator it(t, outer); it; ++it) {
      const int p = int(it.row()) / n, r = int(it.row()) % n;
      const int q = int(it.col()) / n, s = int(it.col()) % n;
      out(p, q) += it.value() * lambda(s, r);
    }
  return out;
}

namespace {

DynamicalRMatrix build_r(RMatrixFamily family, int n, const RVector& base,
                         int perturb_root) {
  check_regular(n, base);
  const RootDatum roots = build_root_datum(n);
  const std::size_t n_roots = roots.roots.size();
  const std::size_t dim = n_roots + std::size_t(n - 1);
  DynamicalRMatrix r;
  r.family = family;
  r.n = n;
  r.base = base;
  r.op = Eigen::MatrixXcd::Zero(dim, dim);
  std::vector<Triplet> trips;
  const bool trig = family == RMatrixFamily::trigonometric;
  for (std::size_t k = 0; k < n_roots; ++k) {
    const auto [i, j] = roots.roots[k];
    const double alpha = roots.root_value(k, base);
    double coeff = trig ? 0.5 * (1.0 + 1.0 / std::tanh(0.5 * alpha)) : 1.0 / alpha;
    if (int(k) == perturb_root) coeff *= 1.01;
    r.op(k, k) = coeff;
    add_elementary_pair(trips, n, i, j, coeff);
  }
  if (trig) {
    for (std::size_t k = 0; k < std::size_t(n - 1); ++k)
      r.op(n_roots + k, n_roots + k) = 0.5;
    for (const CMatrix& x : cartan_orthonormal_basis(n))
      add_diag_pair(trips, n, x, x, 0.5);
  }
  r.tensor = from_triplets(n * n, trips);
  return r;
}

}  // namespace

DynamicalRMatrix rational_r(int n, const RVector& q) {
  return build_r(RMatrixFamily::rational, n, q, -1);
}

DynamicalRMatrix trig_r(int n, const RVector& a) {
  return build_r(RMatrixFamily::trigonometric, n, a, -1);
}

SparseTensor symmetrized_tensor(const DynamicalRMatrix& r) {
  const int n = r.n;
  std::vector<Triplet> trips;
  for (int outer = 0; outer < r.tensor.outerSize(); ++outer)
    for (SparseTensor::InnerIterator it(r.tensor, outer); it; ++it) {
      const int p = int(it.row()) / n, a = int(it.row()) % n;
      const int q = int(it.col()) / n, b = int(it.col()) % n;
      trips.emplace_back(p * n + a, q * n + b, it.value());
      trips.emplace_back(a * n + p, b * n + q, it.value());  // flipped slots
    }
  return from_triplets(n * n, trips);
}

namespace {

// Embed a two-slot tensor into slots (s1, s2) of End((C^n)^x3), identity on
// the remaining slot.
SparseTensor embed_pair(const SparseTensor& t, int n, int s1, int s2) {
  const int rem = 3 - s1 - s2;
  const int stride[3] = {n * n, n, 1};
  std::vector<Triplet> trips;
  trips.reserve(std::size_t(t.nonZeros()) * n);
  for (int outer = 0; outer < t.outerSize(); ++outer)
    for (SparseTensor::InnerIterator it(t, outer); it; ++it) {
      const int a = int(it.row()) / n, b = int(it.row()) % n;
      const int c = int(it.col()) / n, d = int(it.col()) % n;
      for (int m = 0; m < n; ++m) {
        const int row = a * stride[s1] + b * stride[s2] + m * stride[rem];
        const int col = c * stride[s1] + d * stride[s2] + m * stride[rem];
        trips.emplace_back(row, col, it.value());
      }
    }
  return from_triplets(n * n * n, trips);
}

// Embed a single matrix into slot s.
SparseTensor embed_single(const CMatrix& x, int n, int s) {
  const int stride[3] = {n * n, n, 1};
  const int r1 = (s + 1) % 3, r2 = (s + 2) % 3;
  std::vector<Triplet> trips;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      if (x(a, c) == Complex(0, 0)) continue;
      for (int m1 = 0; m1 < n; ++m1)
        for (int m2 = 0; m2 < n; ++m2) {
          const int row = a * stride[s] + m1 * stride[r1] + m2 * stride[r2];
          const int col = c * stride[s] + m1 * stride[r1] + m2 * stride[r2];
          trips.emplace_back(row, col, x(a, c));
        }
    }
  return from_triplets(n * n * n, trips);
}

double operator_norm(const SparseTensor& a, int iters = 80) {
  if (a.nonZeros() == 0) return 0.0;
  const SparseTensor ah = SparseTensor(a.adjoint());
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols());
  v.normalize();
  double sigma2 = 0.0;
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXcd w = ah * (a * v).eval();
    sigma2 = w.norm();
    if (sigma2 == 0.0) return 0.0;
    v = w / sigma2;
  }
  return std::sqrt(sigma2);
}

}  // namespace

CdybeResult cdybe_check(RMatrixFamily family, int n, const RVector& q,
                        double h_step, int perturb_root) {
  check_regular(n, q);
  if (h_step < 1e-12) throw std::invalid_argument("cdybe_check: step underflow");
  auto r_at = [&](const RVector& base) {
    return build_r(family, n, base, perturb_root).tensor;
  };
  const SparseTensor r = r_at(q);
  const SparseTensor r12 = embed_pair(r, n, 0, 1);
  const SparseTensor r13 = embed_pair(r, n, 0, 2);
  const SparseTensor r23 = embed_pair(r, n, 1, 2);

  const SparseTensor brackets = (r12 * r13 - r13 * r12) + (r12 * r23 - r23 * r12) +
                                (r13 * r23 - r23 * r13);

  const std::vector<CMatrix> cartan = cartan_orthonormal_basis(n);
  SparseTensor alt(n * n * n, n * n * n);
  for (const CMatrix& x : cartan) {
    RVector qp = q, qm = q;
    for (int i = 0; i < n; ++i) {
      qp[i] += h_step * x(i, i).real();
      qm[i] -= h_step * x(i, i).real();
    }
    const SparseTensor dr = ((r_at(qp) - r_at(qm)) / (2.0 * h_step)).pruned();
    alt = alt + embed_single(x, n, 0) * embed_pair(dr, n, 1, 2) -
          embed_single(x, n, 1) * embed_pair(dr, n, 0, 2) +
          embed_single(x, n, 2) * embed_pair(dr, n, 0, 1);
  }

  CdybeResult res;
  res.residual_primary = operator_norm(SparseTensor(alt + brackets));
  res.residual_mirrored = operator_norm(SparseTensor(brackets - alt));
  return res;
}

double cdybe_residual(RMatrixFamily family, int n, const RVector& q, double h_step) {
  return cdybe_check(family, n, q, h_step).residual_primary;
}

}  // namespace spincm
