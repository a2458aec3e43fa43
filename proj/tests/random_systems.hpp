#pragma once

// Seeded generators shared by the unit and acceptance tests.

#include <cmath>
#include <random>

#include "ltiframe/gramian.hpp"
#include "ltiframe/system.hpp"

namespace ltiframe::testing {

inline Matrix uniform_matrix(std::mt19937_64& rng, Eigen::Index rows,
                             Eigen::Index cols, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
  return m;
}

inline Vector uniform_vector(std::mt19937_64& rng, Eigen::Index n, double lo = -1.0,
                             double hi = 1.0) {
  return uniform_matrix(rng, n, 1, lo, hi).col(0);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Matrix random_symmetric(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix m = uniform_matrix(rng, n, n);
  return 0.5 * (m + m.transpose());
}

/// Entries in [−1, 1], redrawn until the Kalman rank is full and the Gramian
/// over [0, horizon] is comfortably invertible.
inline LtiSystem random_controllable(std::mt19937_64& rng, int n, int m,
                                     double horizon = 1.0,
                                     double max_condition = 1e8) {
  while (true) {
    LtiSystem sys(uniform_matrix(rng, n, n), uniform_matrix(rng, n, m));
    if (!is_controllable(sys)) continue;
    const Vector ev = finite_horizon_gramian(sys, horizon).spectrum();
    if (ev[n - 1] > ev[0] / max_condition) return sys;
  }
}

/// Random A shifted so that its rightmost eigenvalue has real part in
/// [−2, −0.2].
inline Matrix random_hurwitz(std::mt19937_64& rng, int n) {
  Matrix a = uniform_matrix(rng, n, n);
  const double re = linalg::rightmost_eigenvalue(a).real();
  std::uniform_real_distribution<double> margin(0.2, 2.0);
  a -= (re + margin(rng)) * Matrix::Identity(n, n);
  return a;
}

/// Random A scaled to spectral radius in [0.1, 0.9].
inline Matrix random_schur_stable(std::mt19937_64& rng, int n) {
  Matrix a = uniform_matrix(rng, n, n);
  const double rho = std::abs(linalg::dominant_eigenvalue(a));
  std::uniform_real_distribution<double> target(0.1, 0.9);
  if (rho > 0.0) a *= target(rng) / rho;
  return a;
}

/// B whose column space is deliberately deficient when `deficient` is set:
/// the system lives in a random invariant subspace of dimension < n.
inline LtiSystem random_system_maybe_uncontrollable(std::mt19937_64& rng, int n, int m,
                                                    bool deficient) {
  if (!deficient || n == 1) {
    return LtiSystem(uniform_matrix(rng, n, n), uniform_matrix(rng, n, m));
  }
  // Block upper-triangular A in a random orthonormal basis; B confined to
  // the leading r coordinates, so the reachable space has dimension ≤ r.
  const int r = uniform_int(rng, 1, n - 1);
  Matrix a = uniform_matrix(rng, n, n);
  a.bottomLeftCorner(n - r, r).setZero();
  Matrix b = Matrix::Zero(n, m);
  b.topRows(r) = uniform_matrix(rng, r, m);
  const Eigen::HouseholderQR<Matrix> qr(uniform_matrix(rng, n, n));
  const Matrix q = qr.householderQ();
  return LtiSystem(q * a * q.transpose(), q * b);
}

}  // namespace ltiframe::testing
