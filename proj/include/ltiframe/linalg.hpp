#pragma once

// Dense kernels shared by every other module: matrix exponential, symmetric
// eigendecomposition, Lyapunov/Stein solvers and Gauss-Legendre rules.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace ltiframe {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tolerance {
/// Allowed ‖S − Sᵀ‖_F / ‖S‖_F before sym_eig refuses a matrix.
inline constexpr double kAsymmetry = 1e-8;
/// Margin used when classifying eigenvalues as stable.
inline constexpr double kStability = 1e-9;
/// Singular values below this fraction of the largest count as zero.
inline constexpr double kKalmanRank = 1e-9;
/// Largest condition number accepted before a Gramian counts as singular.
inline constexpr double kConditionLimit = 1e12;
}  // namespace tolerance

namespace linalg {

/// Eigenpairs of a symmetric matrix. Eigenvalues are sorted non-increasing and
/// column i of `vectors` belongs to `values[i]`.
struct SymmetricSpectrum {
  Vector values;
  Matrix vectors;
};

struct QuadratureRule {
  Vector nodes;
  Vector weights;
};

void require_square(const Matrix& m, std::string_view name);
void require_finite(const Matrix& m, std::string_view name);

/// (M + Mᵀ) / 2.
Matrix symmetrize(const Matrix& m);

/// ‖a − b‖_F / max(‖b‖_F, tiny); 0 when both vanish.
double relative_frobenius_error(const Matrix& a, const Matrix& b);

/// e^M by scaling and squaring around a degree-13 Padé approximant.
Matrix mat_exp(const Matrix& m);

/// Eigendecomposition of a symmetric matrix. The input is symmetrized before
/// factoring; asymmetry beyond `asymmetry_tol` (relative Frobenius) is an error.
SymmetricSpectrum sym_eig(const Matrix& s,
                          double asymmetry_tol = tolerance::kAsymmetry);

/// Eigenvalue of `a` with the largest real part.
std::complex<double> rightmost_eigenvalue(const Matrix& a);

/// Eigenvalue of `a` with the largest modulus.
std::complex<double> dominant_eigenvalue(const Matrix& a);

/// Solves A X + X Aᵀ + Q = 0 for Hurwitz A by complex Schur reduction and
/// triangular back substitution.
Matrix solve_continuous_lyapunov(const Matrix& a, const Matrix& q,
                                 double stability_tol = tolerance::kStability);

/// Solves X − A X Aᵀ = Q for Schur-stable A.
Matrix solve_discrete_stein(const Matrix& a, const Matrix& q,
                            double stability_tol = tolerance::kStability);

/// Gauss-Legendre nodes and weights of the given order mapped to [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

/// `panels` equal sub-intervals of [a, b], each with an order-point rule.
QuadratureRule composite_gauss_legendre(int order, int panels, double a,
                                        double b);

}  // namespace linalg
}  // namespace ltiframe
