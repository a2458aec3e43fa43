#pragma once

#include "ltiframe/linalg.hpp"
#include "ltiframe/system.hpp"

namespace ltiframe {

/// Relative eigenvalue threshold below which Gramian directions count as
/// unreachable. Matches the condition limit used for inversion.
inline constexpr double kGramianRankTolerance = 1.0 / tolerance::kConditionLimit;

/// Symmetric nonnegative-definite controllability Gramian with its horizon.
class Gramian {
 public:
  /// Symmetrizes `matrix`; eigenvalues below −1e-10·‖G‖ are rejected.
  Gramian(Matrix matrix, Horizon horizon, TimeMode mode);

  const Matrix& matrix() const { return matrix_; }
  const Horizon& horizon() const { return horizon_; }
  TimeMode mode() const { return mode_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }

  /// Eigenvalues, non-increasing, with round-off negatives clamped to zero.
  const Vector& spectrum() const { return spectrum_.values; }
  const Matrix& eigenvectors() const { return spectrum_.vectors; }

  int rank(double rel_tol = kGramianRankTolerance) const;

  /// G⁻¹ x through the eigendecomposition. Throws UncontrollableError when
  /// λ_max / λ_min exceeds `condition_limit`.
  Vector solve(const Vector& x,
               double condition_limit = tolerance::kConditionLimit) const;

 private:
  Matrix matrix_;
  Horizon horizon_;
  TimeMode mode_;
  linalg::SymmetricSpectrum spectrum_;
};

/// ∫₀ᵀ e^{tA} B Bᵀ e^{tAᵀ} dt from the exponential of the block matrix
/// [[−A, BBᵀ], [0, Aᵀ]]·h on a short step h, doubled up to T.
Gramian finite_horizon_gramian(const LtiSystem& sys, double horizon);

/// Same integral by composite Gauss-Legendre quadrature; an independent
/// evaluator for cross-checks.
Gramian finite_horizon_gramian_quadrature(const LtiSystem& sys, double horizon,
                                          const QuadratureOptions& opts = {},
                                          Execution exec = Execution::parallel);

/// Lyapunov (continuous) or Stein (discrete) solution for stable A.
Gramian infinite_horizon_gramian(const LtiSystem& sys);

/// Σ_{t=0}^{T−1} Aᵗ B Bᵀ (Aᵀ)ᵗ.
Gramian discrete_finite_gramian(const LtiSystem& sys, int horizon);

/// Dispatches on the time mode and horizon. Discrete finite horizons must be
/// whole numbers.
Gramian controllability_gramian(const LtiSystem& sys, const Horizon& horizon);

/// Number of entries of a non-increasing nonnegative spectrum above
/// rel_tol·max.
int numerical_rank(const Vector& spectrum, double rel_tol = kGramianRankTolerance);

}  // namespace ltiframe
