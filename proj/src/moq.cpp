#include "ltiframe/moq.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltiframe/errors.hpp"

namespace ltiframe {

namespace {

void require_invertible(const Gramian& g, double condition_limit,
                        const char* what) {
  const int r = g.rank(1.0 / condition_limit);
  if (r < g.dimension()) {
    std::ostringstream os;
    os << what << " is undefined: Gramian rank " << r << " < " << g.dimension();
    throw UndefinedMoqError(os.str(), r, g.dimension());
  }
}

}  // namespace

double trace_inverse_moq(const Gramian& g, double condition_limit) {
  require_invertible(g, condition_limit, "trace of the inverse Gramian");
  return g.spectrum().cwiseInverse().sum();
}

double min_eig_inverse_moq(const Gramian& g, double condition_limit) {
  require_invertible(g, condition_limit, "inverse minimum eigenvalue");
  return 1.0 / g.spectrum().minCoeff();
}

double det_moq(const Gramian& g, double condition_limit) {
  if (g.rank(1.0 / condition_limit) < g.dimension()) return 0.0;
  return g.spectrum().prod();
}

double frame_theoretic_moq(const Matrix& g) {
  linalg::require_square(g, "Gramian");
  const double frob = g.norm();
  if (!(frob > 0.0)) throw ValueError("frame-theoretic MOQ of a zero Gramian");
  return g.trace() / frob;
}

double frame_theoretic_moq(const Gramian& g) {
  return frame_theoretic_moq(g.matrix());
}

int rank_lower_bound_from_eta(double eta, double tol) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw ValueError("eta must be finite and nonnegative");
  }
  const double sq = eta * eta;
  const double threshold = sq - tol * std::max(1.0, sq);
  if (threshold <= 0.0) return 0;
  // Largest d with d < threshold, plus one.
  return static_cast<int>(std::ceil(threshold));
}

MoqReport report_from_gramian(const Gramian& g, bool controllable,
                              const ReportOptions& opts) {
  MoqReport r;
  r.dimension = g.dimension();
  r.horizon = g.horizon();
  r.mode = g.mode();
  r.spectrum = g.spectrum();
  r.gramian_rank = g.rank(1.0 / opts.condition_limit);
  r.controllable = controllable;
  if (r.gramian_rank == r.dimension) {
    r.trace_inverse = trace_inverse_moq(g, opts.condition_limit);
    r.min_eig_inverse = min_eig_inverse_moq(g, opts.condition_limit);
  }
  r.determinant = det_moq(g, opts.condition_limit);
  if (g.matrix().norm() > 0.0) {
    r.eta = frame_theoretic_moq(g);
    r.rank_lower_bound = rank_lower_bound_from_eta(r.eta, opts.eta_tol);
  }
  r.tightness_ratio = r.eta / std::sqrt(static_cast<double>(r.dimension));
  return r;
}

MoqReport full_report(const LtiSystem& sys, const Horizon& horizon,
                      const ReportOptions& opts) {
  const Gramian g = controllability_gramian(sys, horizon);
  return report_from_gramian(
      g, controllability_rank(sys, opts.kalman_tol) == sys.states(), opts);
}

ActuatorSelection select_actuators(const Matrix& a,
                                   const std::vector<Vector>& candidates, int k,
                                   const Horizon& horizon, TimeMode mode,
                                   Execution exec) {
  linalg::require_square(a, "A");
  if (candidates.empty()) throw ValueError("no actuator candidates");
  if (k < 0 || k > static_cast<int>(candidates.size())) {
    throw ValueError("k must lie between 0 and the number of candidates");
  }
  const Eigen::Index n = a.rows();
  bool any_nonzero = false;
  for (const Vector& c : candidates) {
    if (c.size() != n) throw DimensionError("candidate length does not match A");
    any_nonzero = any_nonzero || c.norm() > 0.0;
  }
  if (!any_nonzero) throw ValueError("all actuator candidates are zero");

  ActuatorSelection out;
  if (k == 0) return out;

  const int count = static_cast<int>(candidates.size());
  std::vector<Matrix> single(count);
  kernels::for_each_index(count, exec, [&](Eigen::Index j) {
    single[j] =
        controllability_gramian(LtiSystem(a, candidates[j], mode), horizon).matrix();
  });

  std::vector<bool> used(count, false);
  Matrix current = Matrix::Zero(n, n);
  std::vector<double> score(count);
  for (int step = 0; step < k; ++step) {
    kernels::for_each_index(count, exec, [&](Eigen::Index j) {
      if (used[j]) {
        score[j] = -1.0;
        return;
      }
      const Matrix trial = current + single[j];
      score[j] = trial.norm() > 0.0 ? frame_theoretic_moq(trial) : 0.0;
    });
    const double best = *std::max_element(score.begin(), score.end());
    int pick = -1;
    for (int j = 0; j < count; ++j) {
      if (!used[j] && score[j] >= best - 1e-12 * std::abs(best)) {
        pick = j;
        break;
      }
    }
    used[pick] = true;
    current += single[pick];
    out.order.push_back(pick);
    out.eta.push_back(score[pick]);
  }
  return out;
}

}  // namespace ltiframe
