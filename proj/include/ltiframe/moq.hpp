#pragma once

// Measures of quality of an LTI system computed from its Gramian: the three
// classical ones (trace of the inverse, inverse of the smallest eigenvalue,
// determinant) and the frame-theoretic tightness η = tr(G)/√tr(G²).

#include <optional>
#include <vector>

#include "ltiframe/gramian.hpp"
#include "ltiframe/kernels.hpp"
#include "ltiframe/system.hpp"

namespace ltiframe {

/// Default strictness margin for η² > d, relative to η².
inline constexpr double kEtaStrictness = 1e-9;

double trace_inverse_moq(const Gramian& g,
                         double condition_limit = tolerance::kConditionLimit);
double min_eig_inverse_moq(const Gramian& g,
                           double condition_limit = tolerance::kConditionLimit);
/// Π λ_i; exactly zero when the Gramian is numerically singular.
double det_moq(const Gramian& g,
               double condition_limit = tolerance::kConditionLimit);

/// η = tr(G)/√tr(G²). Defined for singular G; zero G is an error.
double frame_theoretic_moq(const Matrix& g);
double frame_theoretic_moq(const Gramian& g);

/// Guaranteed lower bound on the reachable dimension: the smallest d' with
/// d' ≥ η²(1 − tol) (so η > √(d'−1)), or 0 when η² is within tol of zero.
int rank_lower_bound_from_eta(double eta, double tol = kEtaStrictness);

struct MoqReport {
  int dimension = 0;
  Horizon horizon = Horizon::infinite();
  TimeMode mode = TimeMode::continuous;
  std::optional<double> trace_inverse;    ///< empty when G is singular
  std::optional<double> min_eig_inverse;  ///< empty when G is singular
  double determinant = 0.0;
  double eta = 0.0;
  double tightness_ratio = 0.0;  ///< η / √n
  int rank_lower_bound = 0;
  int gramian_rank = 0;
  bool controllable = false;  ///< Kalman rank test
  Vector spectrum;

  bool classical_defined() const { return gramian_rank == dimension; }
};

struct ReportOptions {
  double condition_limit = tolerance::kConditionLimit;
  double kalman_tol = tolerance::kKalmanRank;
  double eta_tol = kEtaStrictness;
};

/// Computes the Gramian once and derives every report field.
MoqReport full_report(const LtiSystem& sys, const Horizon& horizon,
                      const ReportOptions& opts = {});

/// Report for a precomputed Gramian; `controllable` supplied by the caller.
MoqReport report_from_gramian(const Gramian& g, bool controllable,
                              const ReportOptions& opts = {});

struct ActuatorSelection {
  std::vector<int> order;    ///< candidate indices in selection order
  std::vector<double> eta;   ///< η after each addition
};

/// Greedy column selection: each step adds the candidate that maximizes η of
/// the resulting Gramian, lowest index on ties. Gramians are additive in the
/// columns of B, so per-candidate Gramians are computed once and summed.
ActuatorSelection select_actuators(const Matrix& a,
                                   const std::vector<Vector>& candidates, int k,
                                   const Horizon& horizon,
                                   TimeMode mode = TimeMode::continuous,
                                   Execution exec = Execution::parallel);

}  // namespace ltiframe
