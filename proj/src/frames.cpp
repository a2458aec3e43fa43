#include "ltiframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ltiframe/errors.hpp"
#include "ltiframe/gramian.hpp"

namespace ltiframe {

// ---------------------------------------------------------------------------
// OrthonormalBasis

OrthonormalBasis::OrthonormalBasis(double horizon, int channels, int degrees)
    : horizon_(horizon), channels_(channels), degrees_(degrees) {
  if (!std::isfinite(horizon) || horizon <= 0.0) {
    throw ValueError("basis horizon must be positive");
  }
  if (channels < 1) throw ValueError("basis needs at least one channel");
  if (degrees < 1) throw ValueError("basis needs at least one degree");
}

OrthonormalBasis build_basis(double horizon, int channels, int degrees) {
  return OrthonormalBasis(horizon, channels, degrees);
}

Vector OrthonormalBasis::scalar_values(double t) const {
  Vector p(degrees_);
  const double x = 2.0 * t / horizon_ - 1.0;
  double prev = 1.0;
  double cur = x;
  p[0] = 1.0;
  if (degrees_ > 1) p[1] = x;
  for (int d = 2; d < degrees_; ++d) {
    const double next = ((2.0 * d - 1.0) * x * cur - (d - 1.0) * prev) / d;
    prev = cur;
    cur = next;
    p[d] = next;
  }
  for (int d = 0; d < degrees_; ++d) p[d] *= std::sqrt((2.0 * d + 1.0) / horizon_);
  return p;
}

Matrix OrthonormalBasis::tabulate(const Vector& times) const {
  Matrix out(degrees_, times.size());
  for (Eigen::Index k = 0; k < times.size(); ++k) out.col(k) = scalar_values(times[k]);
  return out;
}

Vector OrthonormalBasis::element(int index, double t) const {
  if (index < 0 || index >= size()) throw ValueError("basis index out of range");
  Vector out = Vector::Zero(channels_);
  out[channel_of(index)] = scalar_values(t)[degree_of(index)];
  return out;
}

Vector OrthonormalBasis::synthesize(const Vector& coefficients, double t) const {
  if (coefficients.size() != size()) {
    throw DimensionError("coefficient count does not match the basis size");
  }
  const Vector p = scalar_values(t);
  // coefficients laid out degree-major: reshape to channels × degrees.
  const Eigen::Map<const Matrix> grid(coefficients.data(), channels_, degrees_);
  return grid * p;
}

// ---------------------------------------------------------------------------
// GeneratedFrame

GeneratedFrame GeneratedFrame::from_vectors(Matrix vectors) {
  const double energy = vectors.squaredNorm();
  return GeneratedFrame(std::move(vectors), std::nullopt, energy);
}

GeneratedFrame::GeneratedFrame(Matrix vectors, std::optional<double> horizon,
                               double total_energy)
    : vectors_(std::move(vectors)), horizon_(horizon), total_energy_(total_energy) {
  if (vectors_.rows() < 1) throw DimensionError("frame vectors need n >= 1");
  linalg::require_finite(vectors_, "frame vectors");
  if (!std::isfinite(total_energy) || total_energy < 0.0) {
    throw ValueError("frame energy must be finite and nonnegative");
  }
}

void GeneratedFrame::require_certified(double max_relative_tail) const {
  if (tail_bound() > max_relative_tail * total_energy_) {
    std::ostringstream os;
    os << "frame truncation too coarse: tail bound " << tail_bound()
       << " exceeds " << max_relative_tail << " of the frame energy "
       << total_energy_ << "; use more basis degrees";
    throw TruncationError(os.str());
  }
}

GeneratedFrame generate_frame(const LtiSystem& sys, double horizon,
                              const OrthonormalBasis& basis, Execution exec) {
  if (sys.mode() != TimeMode::continuous) {
    throw UnsupportedModeError("generate_frame needs a continuous system");
  }
  if (std::abs(basis.horizon() - horizon) > 1e-12 * horizon) {
    throw ValueError("basis horizon does not match the frame horizon");
  }
  if (basis.channels() != sys.inputs()) {
    throw DimensionError("basis channel count does not match B");
  }
  const auto rule = endpoint_quadrature(sys.a(), horizon, basis.degrees());
  const auto table =
      kernels::tabulate_propagator(sys.a(), sys.b(), horizon, rule, exec);
  Matrix vectors = kernels::project_onto_basis(table, basis.tabulate(rule.nodes), exec);
  const double energy = finite_horizon_gramian(sys, horizon).matrix().trace();
  return GeneratedFrame(std::move(vectors), horizon, energy);
}

Matrix frame_operator(const GeneratedFrame& frame, Execution exec,
                      double max_relative_tail) {
  frame.require_certified(max_relative_tail);
  return kernels::outer_product_sum(frame.vectors(), exec);
}

Vector analysis(const GeneratedFrame& frame, const Vector& v) {
  if (v.size() != frame.dimension()) {
    throw DimensionError("analysis vector does not match the frame dimension");
  }
  return frame.vectors().transpose() * v;
}

Vector synthesis(const GeneratedFrame& frame, const Vector& beta) {
  if (beta.size() != frame.size()) {
    throw DimensionError("synthesis coefficients do not match the frame size");
  }
  return frame.vectors() * beta;
}

FrameBounds frame_bounds(const GeneratedFrame& frame, Execution exec,
                         double max_relative_tail) {
  const Vector ev =
      linalg::sym_eig(frame_operator(frame, exec, max_relative_tail)).values;
  return FrameBounds{std::max(0.0, ev[ev.size() - 1]), std::max(0.0, ev[0])};
}

bool spans_space(const FrameBounds& bounds, double rel_tol) {
  return bounds.upper > 0.0 && bounds.lower > rel_tol * bounds.upper;
}

double nfp(const GeneratedFrame& frame, Execution exec, double max_relative_tail) {
  const Matrix g = frame_operator(frame, exec, max_relative_tail);
  const double tr = g.trace();
  if (!(tr > 0.0)) throw ValueError("normalized frame potential of a zero frame");
  return g.squaredNorm() / (tr * tr);
}

double nfp_pairwise(const GeneratedFrame& frame, Execution exec,
                    double max_relative_tail) {
  frame.require_certified(max_relative_tail);
  const double energy = frame.captured_energy();
  if (!(energy > 0.0)) throw ValueError("normalized frame potential of a zero frame");
  return kernels::pairwise_inner_square_sum(frame.vectors(), exec) / (energy * energy);
}

// ---------------------------------------------------------------------------
// Majorization

bool majorizes(const MajorizationPair& pair, double rel_tol) {
  const Vector& lambda = pair.lambda;
  const Vector& alpha = pair.alpha;
  const Eigen::Index n = lambda.size();
  if (n < 1) throw ValueError("spectrum must be non-empty");
  for (Eigen::Index i = 1; i < n; ++i) {
    if (lambda[i] > lambda[i - 1]) {
      throw ValueError("spectrum must be sorted non-increasing");
    }
  }
  if (alpha.size() < n) throw ValueError("norm sequence is shorter than the spectrum");
  if ((alpha.array() <= 0.0).any()) throw ValueError("norm sequence must be positive");

  const double total = alpha.sum();
  const double slack = rel_tol * total;
  double lambda_partial = 0.0;
  double alpha_partial = 0.0;
  for (Eigen::Index m = 0; m + 1 < n; ++m) {
    lambda_partial += lambda[m];
    alpha_partial += alpha[m];
    if (lambda_partial < alpha_partial - slack) return false;
  }
  return std::abs(lambda.sum() - total) <= slack;
}

void check_norm_sequence(const Vector& alpha, int n) {
  if (n < 1) throw ValueError("dimension must be positive");
  if (alpha.size() < n) {
    throw ValueError("norm sequence needs at least n entries");
  }
  if (!alpha.allFinite()) throw ValueError("norm sequence must be finite (summable)");
  if ((alpha.array() <= 0.0).any()) {
    throw ValueError("norm sequence violates positivity: every entry must be > 0");
  }
  for (Eigen::Index i = 1; i < alpha.size(); ++i) {
    if (alpha[i] > alpha[i - 1]) {
      throw ValueError("norm sequence violates monotonicity: entries must be non-increasing");
    }
  }
  const double mean = alpha.sum() / n;
  if (alpha[0] > mean * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "norm sequence violates the leading-entry bound: alpha_1 = " << alpha[0]
       << " exceeds sum/n = " << mean;
    throw ValueError(os.str());
  }
}

Vector sample_feasible_spectrum(const Vector& alpha, int n, std::mt19937_64& rng,
                                const SamplerOptions& opts) {
  check_norm_sequence(alpha, n);
  const double mean = alpha.sum() / n;
  const Vector flat = Vector::Constant(n, mean);
  if (opts.transfers <= 0 || n == 1) return flat;

  // Required partial sums Σ_{k≤m} α_k for m = 1 … n−1.
  Vector required(n - 1);
  double acc = 0.0;
  for (int m = 0; m < n - 1; ++m) required[m] = acc += alpha[m];

  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> fraction(0.0, 1.0);
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    Vector lambda = flat;
    for (int k = 0; k < opts.transfers; ++k) {
      int from = pick(rng);
      int to = pick(rng);
      while (to == from) to = pick(rng);
      if (from > to) std::swap(from, to);
      // Moving δ from entry `from` to entry `to` lowers the partial sums
      // m = from … to−1 by δ; the unsorted sums bound the sorted ones.
      double room = 0.5 * lambda[from];
      double partial = lambda.head(from).sum();
      for (int m = from; m < to; ++m) {
        partial += lambda[m];
        room = std::min(room, partial - required[m]);
      }
      if (room <= 0.0) continue;
      const double delta = fraction(rng) * room;
      lambda[from] -= delta;
      lambda[to] += delta;
    }
    // Re-impose the exact total lost to round-off.
    lambda *= alpha.sum() / lambda.sum();
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    if (majorizes({lambda, alpha})) return lambda;
  }
  throw ValueError("spectrum sampler found no feasible spectrum");
}

Vector sample_feasible_spectrum(const Vector& alpha, int n, std::uint64_t seed,
                                const SamplerOptions& opts) {
  std::mt19937_64 rng(seed);
  return sample_feasible_spectrum(alpha, n, rng, opts);
}

}  // namespace ltiframe
