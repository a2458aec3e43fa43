#include "ltiframe/system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltiframe/errors.hpp"
#include "ltiframe/gramian.hpp"

namespace ltiframe {

const char* to_string(TimeMode mode) {
  return mode == TimeMode::continuous ? "continuous" : "discrete";
}

Horizon Horizon::finite(double value) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ValueError("horizon must be a positive finite number");
  }
  return Horizon(value);
}

double Horizon::value() const {
  if (!value_) throw ValueError("infinite horizon has no finite value");
  return *value_;
}

LtiSystem::LtiSystem(Matrix a, Matrix b, TimeMode mode)
    : a_(std::move(a)), b_(std::move(b)), mode_(mode) {
  linalg::require_square(a_, "A");
  if (b_.rows() != a_.rows()) {
    std::ostringstream os;
    os << "B has " << b_.rows() << " rows but A is " << a_.rows() << "x"
       << a_.cols();
    throw DimensionError(os.str());
  }
  if (b_.cols() < 1) throw DimensionError("B needs at least one column");
  linalg::require_finite(a_, "A");
  linalg::require_finite(b_, "B");
}

ControlSignal::ControlSignal(OrthonormalBasis b, Vector c)
    : basis(std::move(b)), coefficients(std::move(c)) {
  if (coefficients.size() != basis.size()) {
    throw DimensionError("coefficient count does not match the basis size");
  }
  if (!coefficients.allFinite()) {
    throw ValueError("control coefficients must be finite");
  }
}

ControlSignal ControlSignal::constant(double horizon, const Vector& value,
                                      int degrees) {
  OrthonormalBasis basis(horizon, static_cast<int>(value.size()), degrees);
  Vector coeffs = Vector::Zero(basis.size());
  // Degree zero is 1/√T on each channel.
  coeffs.head(value.size()) = value * std::sqrt(horizon);
  return ControlSignal(std::move(basis), std::move(coeffs));
}

ControlSignal ControlSignal::zero(double horizon, int channels, int degrees) {
  OrthonormalBasis basis(horizon, channels, degrees);
  const int size = basis.size();
  return ControlSignal(std::move(basis), Vector::Zero(size));
}

Matrix ControlSignal::sample(const Vector& times) const {
  Matrix out(basis.channels(), times.size());
  for (Eigen::Index k = 0; k < times.size(); ++k) out.col(k) = at(times[k]);
  return out;
}

linalg::QuadratureRule endpoint_quadrature(const Matrix& a, double horizon,
                                           int basis_degrees,
                                           const QuadratureOptions& opts) {
  const int order = opts.order > 0 ? opts.order : std::max(16, basis_degrees + 16);
  int panels = opts.panels;
  if (panels <= 0) {
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    panels = std::max(1, static_cast<int>(std::ceil(norm1 * horizon)));
  }
  return linalg::composite_gauss_legendre(order, panels, 0.0, horizon);
}

Matrix reachability_matrix(const LtiSystem& sys) {
  const Eigen::Index n = sys.states();
  const Eigen::Index m = sys.inputs();
  Matrix k(n, n * m);
  k.leftCols(m) = sys.b();
  for (Eigen::Index i = 1; i < n; ++i) {
    k.middleCols(i * m, m) = sys.a() * k.middleCols((i - 1) * m, m);
  }
  return k;
}

int controllability_rank(const LtiSystem& sys, double rel_tol) {
  if (!(rel_tol > 0.0)) throw ValueError("rank tolerance must be positive");
  const Eigen::JacobiSVD<Matrix> svd(reachability_matrix(sys));
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  return static_cast<int>((sv.array() > rel_tol * sv[0]).count());
}

bool is_controllable(const LtiSystem& sys, double rel_tol) {
  return controllability_rank(sys, rel_tol) == sys.states();
}

Vector endpoint_map(const LtiSystem& sys, const ControlSignal& u,
                    Execution exec, const QuadratureOptions& opts) {
  if (sys.mode() != TimeMode::continuous) {
    throw UnsupportedModeError(
        "endpoint_map integrates a continuous system; use "
        "discrete_endpoint_map for discrete systems");
  }
  if (u.basis.channels() != sys.inputs()) {
    throw DimensionError("control channel count does not match B");
  }
  const double horizon = u.horizon();
  const auto rule = endpoint_quadrature(sys.a(), horizon, u.basis.degrees(), opts);
  const auto table =
      kernels::tabulate_propagator(sys.a(), sys.b(), horizon, rule, exec);
  return kernels::weighted_input_sum(table, u.sample(rule.nodes));
}

Vector discrete_endpoint_map(const LtiSystem& sys, const Matrix& controls) {
  if (sys.mode() != TimeMode::discrete) {
    throw UnsupportedModeError("discrete_endpoint_map needs a discrete system");
  }
  if (controls.rows() != sys.inputs()) {
    throw DimensionError("control rows do not match B");
  }
  Vector x = Vector::Zero(sys.states());
  for (Eigen::Index t = 0; t < controls.cols(); ++t) {
    x = sys.a() * x + sys.b() * controls.col(t);
  }
  return x;
}

Trajectory simulate(const LtiSystem& sys, const ControlSignal& u,
                    const Vector& x0, int steps) {
  if (sys.mode() != TimeMode::continuous) {
    throw UnsupportedModeError("simulate integrates continuous systems only");
  }
  if (steps < 1) throw ValueError("simulate needs at least one step");
  if (x0.size() != sys.states()) throw DimensionError("x0 has the wrong size");
  if (u.basis.channels() != sys.inputs()) {
    throw DimensionError("control channel count does not match B");
  }

  const double horizon = u.horizon();
  const double h = horizon / steps;
  const Matrix& a = sys.a();
  const Matrix& b = sys.b();
  auto rhs = [&](double t, const Vector& x) -> Vector {
    return a * x + b * u.at(t);
  };

  Trajectory traj;
  traj.times.resize(steps + 1);
  traj.states.reserve(steps + 1);
  Vector x = x0;
  traj.times[0] = 0.0;
  traj.states.push_back(x);
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    const Vector k1 = rhs(t, x);
    const Vector k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const Vector k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const Vector k4 = rhs(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.times[s + 1] = (s + 1 == steps) ? horizon : (s + 1) * h;
    traj.states.push_back(x);
  }
  return traj;
}

MinEnergyControl min_energy_control(const LtiSystem& sys, double horizon,
                                    const Vector& target,
                                    const OrthonormalBasis& basis,
                                    const MinEnergyOptions& opts) {
  if (sys.mode() != TimeMode::continuous) {
    throw UnsupportedModeError("min_energy_control expects a continuous system");
  }
  if (target.size() != sys.states()) throw DimensionError("target has the wrong size");
  if (!target.allFinite()) throw ValueError("target must be finite");
  if (basis.channels() != sys.inputs()) {
    throw DimensionError("basis channel count does not match B");
  }
  if (std::abs(basis.horizon() - horizon) > 1e-12 * horizon) {
    throw ValueError("basis horizon does not match the transfer horizon");
  }

  const Gramian gramian = finite_horizon_gramian(sys, horizon);
  const Vector weight = gramian.solve(target, opts.condition_limit);
  const double trace = gramian.matrix().trace();
  const double cost = target.dot(weight);

  // u^x = L_T*(G⁻¹x), so its coefficient on φ_i is ⟨v_i, G⁻¹x⟩.
  int degrees = basis.degrees();
  while (true) {
    const OrthonormalBasis trial = basis.with_degrees(degrees);
    const auto rule = endpoint_quadrature(sys.a(), horizon, degrees);
    const auto table =
        kernels::tabulate_propagator(sys.a(), sys.b(), horizon, rule, opts.exec);
    const Matrix frame =
        kernels::project_onto_basis(table, trial.tabulate(rule.nodes), opts.exec);
    Vector coeffs = frame.transpose() * weight;
    const double captured = coeffs.squaredNorm();
    // Once the frame tail is at round-off level the remaining gap between
    // `captured` and `cost` is conditioning error, not truncation.
    const double tail = trace - frame.squaredNorm();
    if (captured >= (1.0 - opts.energy_gap) * cost || tail <= opts.tail_floor * trace) {
      return MinEnergyControl{ControlSignal(trial, std::move(coeffs)), cost};
    }
    if (2 * degrees * sys.inputs() > opts.max_basis_size) {
      std::ostringstream os;
      os.precision(3);
      os << "minimum-energy control misses the optimal cost by a relative "
         << (cost - captured) / cost << " with " << trial.size()
         << " basis functions (limit " << opts.max_basis_size << ")";
      throw TruncationError(os.str());
    }
    degrees *= 2;
  }
}

}  // namespace ltiframe
