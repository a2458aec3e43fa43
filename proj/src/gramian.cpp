#include "ltiframe/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltiframe/errors.hpp"

namespace ltiframe {

Gramian::Gramian(Matrix matrix, Horizon horizon, TimeMode mode)
    : horizon_(horizon), mode_(mode) {
  linalg::require_square(matrix, "Gramian");
  linalg::require_finite(matrix, "Gramian");
  matrix_ = linalg::symmetrize(matrix);
  spectrum_ = linalg::sym_eig(matrix_);

  const double floor = -1e-10 * matrix_.norm();
  const double lowest = spectrum_.values.minCoeff();
  if (lowest < floor) {
    std::ostringstream os;
    os << "Gramian is not nonnegative definite: eigenvalue " << lowest;
    throw ValueError(os.str());
  }
  spectrum_.values = spectrum_.values.cwiseMax(0.0);
}

int Gramian::rank(double rel_tol) const {
  return numerical_rank(spectrum_.values, rel_tol);
}

Vector Gramian::solve(const Vector& x, double condition_limit) const {
  if (x.size() != dimension()) throw DimensionError("vector has the wrong size");
  const int r = rank(1.0 / condition_limit);
  if (r < dimension()) {
    std::ostringstream os;
    os << "Gramian is singular to the condition limit " << condition_limit
       << ": numerical rank " << r << " of " << dimension();
    throw UncontrollableError(os.str(), r, dimension());
  }
  const Matrix& v = spectrum_.vectors;
  return v * (v.transpose() * x).cwiseQuotient(spectrum_.values);
}

int numerical_rank(const Vector& spectrum, double rel_tol) {
  if (spectrum.size() == 0) return 0;
  const double top = spectrum.maxCoeff();
  if (!(top > 0.0)) return 0;
  return static_cast<int>((spectrum.array() > rel_tol * top).count());
}

Gramian finite_horizon_gramian(const LtiSystem& sys, double horizon) {
  if (sys.mode() != TimeMode::continuous) {
    throw UnsupportedModeError(
        "finite_horizon_gramian integrates a continuous system; use "
        "discrete_finite_gramian");
  }
  const Horizon h = Horizon::finite(horizon);

  const Matrix& a = sys.a();
  const Eigen::Index n = a.rows();
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  const int doublings =
      norm1 * horizon > 1.0
          ? static_cast<int>(std::ceil(std::log2(norm1 * horizon)))
          : 0;
  const double step = horizon / std::ldexp(1.0, doublings);

  Matrix block = Matrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = -a;
  block.topRightCorner(n, n) = sys.b() * sys.b().transpose();
  block.bottomRightCorner(n, n) = a.transpose();
  const Matrix e = linalg::mat_exp(step * block);

  // e^{Aᵀh} sits in the lower-right block; G_h = e^{Ah} · (upper-right block).
  Matrix flow = e.bottomRightCorner(n, n).transpose();
  Matrix g = linalg::symmetrize(flow * e.topRightCorner(n, n));
  for (int k = 0; k < doublings; ++k) {
    g = linalg::symmetrize(g + flow * g * flow.transpose());
    flow = flow * flow;
  }
  return Gramian(std::move(g), h, TimeMode::continuous);
}

Gramian finite_horizon_gramian_quadrature(const LtiSystem& sys, double horizon,
                                          const QuadratureOptions& opts,
                                          Execution exec) {
  if (sys.mode() != TimeMode::continuous) {
    throw UnsupportedModeError("quadrature Gramian needs a continuous system");
  }
  const Horizon h = Horizon::finite(horizon);
  const double norm1 = sys.a().cwiseAbs().colwise().sum().maxCoeff();
  const int scale = std::max(1, static_cast<int>(std::ceil(norm1 * horizon)));
  const int order = opts.order > 0 ? opts.order : 8;
  const int panels = opts.panels > 0 ? opts.panels : 64 * scale;
  const auto rule = linalg::composite_gauss_legendre(order, panels, 0.0, horizon);
  const auto table =
      kernels::tabulate_propagator(sys.a(), sys.b(), horizon, rule, exec);
  return Gramian(kernels::weighted_outer_sum(table, exec), h,
                 TimeMode::continuous);
}

Gramian infinite_horizon_gramian(const LtiSystem& sys) {
  const Matrix q = sys.b() * sys.b().transpose();
  Matrix g = sys.mode() == TimeMode::continuous
                 ? linalg::solve_continuous_lyapunov(sys.a(), q)
                 : linalg::solve_discrete_stein(sys.a(), q);
  return Gramian(std::move(g), Horizon::infinite(), sys.mode());
}

Gramian discrete_finite_gramian(const LtiSystem& sys, int horizon) {
  if (sys.mode() != TimeMode::discrete) {
    throw UnsupportedModeError("discrete_finite_gramian needs a discrete system");
  }
  if (horizon < 1) throw ValueError("discrete horizon must be at least 1");
  // G_{t+1} = A G_t Aᵀ + BBᵀ, starting from G_1 = BBᵀ.
  const Matrix& a = sys.a();
  const Matrix q = sys.b() * sys.b().transpose();
  Matrix g = linalg::symmetrize(q);
  for (int t = 1; t < horizon; ++t) g = linalg::symmetrize(a * g * a.transpose() + q);
  return Gramian(std::move(g), Horizon::finite(horizon), TimeMode::discrete);
}

Gramian controllability_gramian(const LtiSystem& sys, const Horizon& horizon) {
  if (horizon.is_infinite()) return infinite_horizon_gramian(sys);
  if (sys.mode() == TimeMode::continuous) {
    return finite_horizon_gramian(sys, horizon.value());
  }
  const double t = horizon.value();
  if (t != std::floor(t) || t > 1e9) {
    throw ValueError("discrete horizons must be whole numbers of steps");
  }
  return discrete_finite_gramian(sys, static_cast<int>(t));
}

}  // namespace ltiframe
