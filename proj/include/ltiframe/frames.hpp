#pragma once

// Frames on Rⁿ: the frame an LTI system induces through its end-point map,
// the analysis/synthesis/frame operators, frame bounds, the normalized frame
// potential, and majorization of norm sequences by spectra.

#include <cstdint>
#include <optional>
#include <random>

#include "ltiframe/basis.hpp"
#include "ltiframe/kernels.hpp"
#include "ltiframe/system.hpp"

namespace ltiframe {

/// Consumers refuse truncated frames whose tail exceeds this fraction of the
/// full frame energy trace(G).
inline constexpr double kMaxRelativeTail = 1e-4;

/// A finite family of vectors v_1 … v_N in Rⁿ, optionally the truncation of a
/// countable frame. `total_energy` is Σ‖v_i‖² over the untruncated family;
/// for finite families it equals the captured energy and the tail is zero.
class GeneratedFrame {
 public:
  /// A finite frame: tail bound zero.
  static GeneratedFrame from_vectors(Matrix vectors);

  GeneratedFrame(Matrix vectors, std::optional<double> horizon,
                 double total_energy);

  /// Columns are the frame vectors.
  const Matrix& vectors() const { return vectors_; }
  int size() const { return static_cast<int>(vectors_.cols()); }
  int dimension() const { return static_cast<int>(vectors_.rows()); }
  std::optional<double> horizon() const { return horizon_; }

  /// α_i = ⟨v_i, v_i⟩.
  Vector alphas() const { return vectors_.colwise().squaredNorm().transpose(); }
  double captured_energy() const { return vectors_.squaredNorm(); }
  double total_energy() const { return total_energy_; }
  /// total_energy − Σ α_i: the energy of the discarded frame vectors.
  double tail_bound() const { return total_energy_ - captured_energy(); }

  /// Throws TruncationError if tail_bound > max_relative_tail · total_energy.
  void require_certified(double max_relative_tail = kMaxRelativeTail) const;

 private:
  Matrix vectors_;
  std::optional<double> horizon_;
  double total_energy_;
};

/// v_i = L_T(φ_i) for the basis elements, with tail bound
/// trace(G_T) − Σ‖v_i‖².
GeneratedFrame generate_frame(const LtiSystem& sys, double horizon,
                              const OrthonormalBasis& basis,
                              Execution exec = Execution::parallel);

/// Σ v_i v_iᵀ.
Matrix frame_operator(const GeneratedFrame& frame,
                      Execution exec = Execution::parallel,
                      double max_relative_tail = kMaxRelativeTail);

/// (⟨v_i, v⟩)_i.
Vector analysis(const GeneratedFrame& frame, const Vector& v);

/// Σ β_i v_i.
Vector synthesis(const GeneratedFrame& frame, const Vector& beta);

struct FrameBounds {
  double lower;  ///< λ_min of the frame operator
  double upper;  ///< λ_max of the frame operator
};

FrameBounds frame_bounds(const GeneratedFrame& frame,
                         Execution exec = Execution::parallel,
                         double max_relative_tail = kMaxRelativeTail);

/// True when the lower bound is above rel_tol times the upper bound.
bool spans_space(const FrameBounds& bounds, double rel_tol = 1e-12);

/// Normalized frame potential trace(G²)/trace(G)², G the frame operator.
double nfp(const GeneratedFrame& frame, Execution exec = Execution::parallel,
           double max_relative_tail = kMaxRelativeTail);

/// The same quantity from its definition Σ_i Σ_j ⟨v_i, v_j⟩² / (Σ‖v_i‖²)².
double nfp_pairwise(const GeneratedFrame& frame,
                    Execution exec = Execution::parallel,
                    double max_relative_tail = kMaxRelativeTail);

/// A candidate spectrum λ (length n, non-increasing) and a norm sequence α.
struct MajorizationPair {
  Vector lambda;
  Vector alpha;
};

/// λ ≻ α: partial sums of λ dominate those of α for m = 1 … n−1 and the
/// totals agree. Comparisons allow rel_tol·Σα of slack. Throws ValueError if
/// λ is not sorted non-increasing or α has non-positive entries.
bool majorizes(const MajorizationPair& pair, double rel_tol = 1e-10);

/// Validates that α can be the norm sequence of a frame of Rⁿ with an
/// optimal tight operator: entries positive, non-increasing, α₁ ≤ Σα/n and at
/// least n entries. Throws ValueError naming the failed condition.
void check_norm_sequence(const Vector& alpha, int n);

struct SamplerOptions {
  /// Random pairwise mass transfers applied to the flat spectrum. Zero yields
  /// the flat spectrum itself.
  int transfers = 50;
  int max_attempts = 100;
};

/// Draws a non-increasing λ ∈ Rⁿ with λ ≻ α, starting from the flat
/// spectrum (Σα/n, …, Σα/n) and applying random transfers from a lower to a
/// higher index, each capped so every partial-sum constraint still holds.
/// Deterministic for a given generator state.
Vector sample_feasible_spectrum(const Vector& alpha, int n, std::mt19937_64& rng,
                                const SamplerOptions& opts = {});

Vector sample_feasible_spectrum(const Vector& alpha, int n, std::uint64_t seed,
                                const SamplerOptions& opts = {});

}  // namespace ltiframe
