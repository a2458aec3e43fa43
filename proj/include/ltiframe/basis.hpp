#pragma once

#include "ltiframe/linalg.hpp"

namespace ltiframe {

/// Orthonormal basis of L²([0, T]; Rᵐ) truncated to `degrees` polynomial
/// degrees per input channel: φ_i(t) = √((2d+1)/T) P_d(2t/T − 1) e_c with
/// d = i / m and c = i % m (degree-major, channel-minor enumeration).
class OrthonormalBasis {
 public:
  OrthonormalBasis(double horizon, int channels, int degrees);

  double horizon() const { return horizon_; }
  int channels() const { return channels_; }
  int degrees() const { return degrees_; }
  int size() const { return degrees_ * channels_; }

  int degree_of(int index) const { return index / channels_; }
  int channel_of(int index) const { return index % channels_; }

  /// Same kind and horizon, different number of degrees.
  OrthonormalBasis with_degrees(int degrees) const {
    return OrthonormalBasis(horizon_, channels_, degrees);
  }

  /// Normalized shifted-Legendre values p_0(t) … p_{D−1}(t).
  Vector scalar_values(double t) const;

  /// Scalar values at several times, one column per time (D × times).
  Matrix tabulate(const Vector& times) const;

  /// φ_i(t) as an m-vector.
  Vector element(int index, double t) const;

  /// Σ_i coefficients[i] φ_i(t).
  Vector synthesize(const Vector& coefficients, double t) const;

 private:
  double horizon_;
  int channels_;
  int degrees_;
};

OrthonormalBasis build_basis(double horizon, int channels, int degrees);

}  // namespace ltiframe
