#pragma once

#include <optional>
#include <vector>

#include "ltiframe/basis.hpp"
#include "ltiframe/kernels.hpp"
#include "ltiframe/linalg.hpp"

namespace ltiframe {

enum class TimeMode { continuous, discrete };

const char* to_string(TimeMode mode);

/// Positive finite time horizon or the infinite horizon.
class Horizon {
 public:
  static Horizon finite(double value);
  static Horizon infinite() { return Horizon(); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Finite value; throws ValueError on the infinite horizon.
  double value() const;

  friend bool operator==(const Horizon&, const Horizon&) = default;

 private:
  Horizon() = default;
  explicit Horizon(double v) : value_(v) {}
  std::optional<double> value_;
};

/// ẋ = A x + B u (continuous) or x⁺ = A x + B u (discrete).
class LtiSystem {
 public:
  LtiSystem(Matrix a, Matrix b, TimeMode mode = TimeMode::continuous);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  TimeMode mode() const { return mode_; }
  int states() const { return static_cast<int>(a_.rows()); }
  int inputs() const { return static_cast<int>(b_.cols()); }

 private:
  Matrix a_;
  Matrix b_;
  TimeMode mode_;
};

/// A control u ∈ L²([0, T]; Rᵐ) stored as its coefficients over a truncated
/// orthonormal basis, so ‖u‖² is the squared coefficient norm.
struct ControlSignal {
  OrthonormalBasis basis;
  Vector coefficients;

  ControlSignal(OrthonormalBasis b, Vector c);

  /// u ≡ value on [0, T].
  static ControlSignal constant(double horizon, const Vector& value, int degrees = 1);
  static ControlSignal zero(double horizon, int channels, int degrees = 1);

  double horizon() const { return basis.horizon(); }
  Vector at(double t) const { return basis.synthesize(coefficients, t); }
  /// u at each time, one column per time (m × times).
  Matrix sample(const Vector& times) const;
  double energy() const { return coefficients.squaredNorm(); }
};

struct Trajectory {
  Vector times;
  std::vector<Vector> states;
};

/// Quadrature used to evaluate integrals over [0, T]. Zero selects the
/// automatic choice (order and panel count scaled with the basis degree and
/// ‖A‖·T).
struct QuadratureOptions {
  int order = 0;
  int panels = 0;
};

linalg::QuadratureRule endpoint_quadrature(const Matrix& a, double horizon,
                                           int basis_degrees,
                                           const QuadratureOptions& opts = {});

/// [B, AB, …, A^{n−1}B].
Matrix reachability_matrix(const LtiSystem& sys);

/// Numerical rank of the reachability matrix: singular values above
/// `rel_tol` times the largest one.
int controllability_rank(const LtiSystem& sys,
                         double rel_tol = tolerance::kKalmanRank);

bool is_controllable(const LtiSystem& sys,
                     double rel_tol = tolerance::kKalmanRank);

/// L_T(u) = ∫₀ᵀ e^{(T−t)A} B u(t) dt.
Vector endpoint_map(const LtiSystem& sys, const ControlSignal& u,
                    Execution exec = Execution::parallel,
                    const QuadratureOptions& opts = {});

/// Σ_{t=0}^{T−1} A^{T−1−t} B u_t for a discrete system; `controls` is m × T.
Vector discrete_endpoint_map(const LtiSystem& sys, const Matrix& controls);

/// Classical fixed-step RK4 over [0, T] with `steps` steps.
Trajectory simulate(const LtiSystem& sys, const ControlSignal& u,
                    const Vector& x0, int steps);

struct MinEnergyOptions {
  /// Stop enlarging the basis once Σβ² ≥ (1 − energy_gap)·⟨x, G⁻¹x⟩.
  double energy_gap = 1e-10;
  /// Also stop once trace(G) − Σ‖v_i‖² falls below tail_floor·trace(G): more
  /// basis functions then only add round-off.
  double tail_floor = 1e-13;
  int max_basis_size = 512;
  double condition_limit = tolerance::kConditionLimit;
  Execution exec = Execution::parallel;
};

struct MinEnergyControl {
  ControlSignal control;
  double cost;
};

/// Minimum-energy transfer from the origin to `target` in time T:
/// u(t) = Bᵀ e^{(T−t)Aᵀ} G⁻¹ x, cost ⟨x, G⁻¹x⟩. The basis degree count is a
/// starting point and is doubled until the captured energy criterion holds.
MinEnergyControl min_energy_control(const LtiSystem& sys, double horizon,
                                    const Vector& target,
                                    const OrthonormalBasis& basis,
                                    const MinEnergyOptions& opts = {});

}  // namespace ltiframe
