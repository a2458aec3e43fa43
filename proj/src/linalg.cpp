#include "ltiframe/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "ltiframe/errors.hpp"

namespace ltiframe::linalg {

namespace {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

std::string format_eigenvalue(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

// Degree-13 Padé coefficients and the 1-norm bound below which no scaling is
// needed (Higham, 2005).
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

void require_square(const Matrix& m, std::string_view name) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << name << " must be a non-empty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
}

void require_finite(const Matrix& m, std::string_view name) {
  if (!m.allFinite()) {
    throw ValueError(std::string(name) + " has non-finite entries");
  }
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double relative_frobenius_error(const Matrix& a, const Matrix& b) {
  const double diff = (a - b).norm();
  const double scale = b.norm();
  if (scale == 0.0) return diff;
  return diff / scale;
}

Matrix mat_exp(const Matrix& m) {
  require_square(m, "matrix exponential argument");
  require_finite(m, "matrix exponential argument");

  const Eigen::Index n = m.rows();
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Matrix a = m / std::ldexp(1.0, squarings);

  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kPade13;

  const Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                         b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
  const Matrix u = a * u_inner;
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                   b[4] * a4 + b[2] * a2 + b[0] * ident;

  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

SymmetricSpectrum sym_eig(const Matrix& s, double asymmetry_tol) {
  require_square(s, "symmetric eigensolver input");
  require_finite(s, "symmetric eigensolver input");
  const double scale = s.norm();
  const double asym = (s - s.transpose()).norm();
  if (scale > 0.0 && asym / scale > asymmetry_tol) {
    std::ostringstream os;
    os << "matrix is not symmetric: relative asymmetry " << asym / scale
       << " exceeds " << asymmetry_tol;
    throw ValueError(os.str());
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(s));
  if (solver.info() != Eigen::Success) {
    throw ValueError("symmetric eigendecomposition did not converge");
  }
  // Eigen returns ascending order; flip to non-increasing.
  SymmetricSpectrum out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

std::complex<double> rightmost_eigenvalue(const Matrix& a) {
  require_square(a, "A");
  const Eigen::VectorXcd ev = a.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (ev[i].real() > ev[best].real()) best = i;
  }
  return ev[best];
}

std::complex<double> dominant_eigenvalue(const Matrix& a) {
  require_square(a, "A");
  const Eigen::VectorXcd ev = a.eigenvalues();
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (std::abs(ev[i]) > std::abs(ev[best])) best = i;
  }
  return ev[best];
}

Matrix solve_continuous_lyapunov(const Matrix& a, const Matrix& q,
                                 double stability_tol) {
  require_square(a, "A");
  require_square(q, "Q");
  require_finite(a, "A");
  require_finite(q, "Q");
  if (a.rows() != q.rows()) throw DimensionError("A and Q differ in size");

  const Complex rightmost = rightmost_eigenvalue(a);
  if (!(rightmost.real() < -stability_tol)) {
    throw StabilityError("A is not Hurwitz: eigenvalue " +
                             format_eigenvalue(rightmost) +
                             " has non-negative real part",
                         rightmost);
  }

  // A = U T U*, T upper triangular. With Y = U* X U and F = U* Q U the
  // equation becomes T Y + Y T* = −F, solved from the bottom-right corner.
  Eigen::ComplexSchur<Matrix> schur(a);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix f = u.adjoint() * q.cast<Complex>() * u;

  const Eigen::Index n = a.rows();
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Complex rhs = -f(i, j);
      for (Eigen::Index k = i + 1; k < n; ++k) rhs -= t(i, k) * y(k, j);
      for (Eigen::Index k = j + 1; k < n; ++k) rhs -= y(i, k) * std::conj(t(j, k));
      y(i, j) = rhs / (t(i, i) + std::conj(t(j, j)));
    }
  }
  return symmetrize((u * y * u.adjoint()).real());
}

Matrix solve_discrete_stein(const Matrix& a, const Matrix& q,
                            double stability_tol) {
  require_square(a, "A");
  require_square(q, "Q");
  require_finite(a, "A");
  require_finite(q, "Q");
  if (a.rows() != q.rows()) throw DimensionError("A and Q differ in size");

  const Complex dominant = dominant_eigenvalue(a);
  if (!(std::abs(dominant) < 1.0 - stability_tol)) {
    throw StabilityError("A is not Schur stable: eigenvalue " +
                             format_eigenvalue(dominant) +
                             " has modulus >= 1",
                         dominant);
  }

  // Y − T Y T* = F with Y = U* X U. For column j, p_k = Σ_{l>j} Y(k,l) conj(T(j,l))
  // collects the already-solved columns.
  Eigen::ComplexSchur<Matrix> schur(a);
  const ComplexMatrix& t = schur.matrixT();
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix f = u.adjoint() * q.cast<Complex>() * u;

  const Eigen::Index n = a.rows();
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  Eigen::VectorXcd p(n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex acc = 0.0;
      for (Eigen::Index l = j + 1; l < n; ++l) acc += y(k, l) * std::conj(t(j, l));
      p[k] = acc;
    }
    const Complex tjj = std::conj(t(j, j));
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      Complex rhs = f(i, j) + t(i, i) * p[i];
      for (Eigen::Index k = i + 1; k < n; ++k) rhs += t(i, k) * (p[k] + y(k, j) * tjj);
      y(i, j) = rhs / (1.0 - t(i, i) * tjj);
    }
  }
  return symmetrize((u * y * u.adjoint()).real());
}

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 1) throw ValueError("quadrature order must be positive");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ValueError("quadrature interval requires finite a < b");
  }

  QuadratureRule rule{Vector(order), Vector(order)};
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int pairs = (order + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    // Tricomi initial guess, then Newton on P_order.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = order * (x * p1 - (order == 1 ? 1.0 : p0)) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    rule.nodes[i] = mid - half * x;
    rule.nodes[order - 1 - i] = mid + half * x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = mid;
  // Reference weights sum to 2; removing their rounding drift keeps
  // low-degree moments within an ulp.
  rule.weights *= half * (2.0 / rule.weights.sum());
  return rule;
}

QuadratureRule composite_gauss_legendre(int order, int panels, double a,
                                        double b) {
  if (panels < 1) throw ValueError("panel count must be positive");
  if (panels == 1) return gauss_legendre(order, a, b);
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ValueError("quadrature interval requires finite a < b");
  }
  QuadratureRule rule{Vector(order * panels), Vector(order * panels)};
  const double width = (b - a) / panels;
  const QuadratureRule local = gauss_legendre(order, 0.0, width);
  for (int p = 0; p < panels; ++p) {
    const double left = a + p * width;
    rule.nodes.segment(p * order, order) = local.nodes.array() + left;
    rule.weights.segment(p * order, order) = local.weights;
  }
  return rule;
}

}  // namespace ltiframe::linalg
