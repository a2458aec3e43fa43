#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path selected by `Execution`. Reductions split the index range into a
// fixed number of chunks that do not depend on the thread count, so parallel
// results are reproducible run to run.

#include <exception>
#include <vector>

#include "ltiframe/linalg.hpp"

namespace ltiframe {

enum class Execution { serial, parallel };

namespace kernels {

/// Number of reduction chunks used by the parallel kernels.
inline constexpr int kReductionChunks = 64;

/// Calls fn(i) for i in [0, count). In parallel mode an exception thrown by
/// any iteration is rethrown after the loop; the one from the lowest index
/// wins so failures are reported deterministically.
template <typename Fn>
void for_each_index(Eigen::Index count, Execution exec, Fn&& fn) {
  if (exec == Execution::serial) {
    for (Eigen::Index i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  Eigen::Index error_index = count;
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index i = 0; i < count; ++i) {
    try {
      fn(i);
    } catch (...) {
#pragma omp critical(ltiframe_for_each_index)
      {
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Samples of the input-to-state propagator e^{(T − t_k) A} B at the nodes of
/// a quadrature rule on [0, T].
struct PropagatorTable {
  linalg::QuadratureRule rule;
  std::vector<Matrix> samples;  // one n×m block per node
};

PropagatorTable tabulate_propagator(const Matrix& a, const Matrix& b,
                                    double horizon,
                                    const linalg::QuadratureRule& rule,
                                    Execution exec);

/// Σ_k w_k K_k K_kᵀ over the table.
Matrix weighted_outer_sum(const PropagatorTable& table, Execution exec);

/// Σ_k w_k K_k u_k for inputs given column-wise (m × nodes).
Vector weighted_input_sum(const PropagatorTable& table, const Matrix& inputs);

/// Frame vectors for a scalar basis tensored with the input channels:
/// column (d·m + c) is Σ_k w_k p_d(t_k) K_k[:, c]. `scalar_values` is
/// (degrees × nodes).
Matrix project_onto_basis(const PropagatorTable& table,
                          const Matrix& scalar_values, Execution exec);

/// Σ_i v_i v_iᵀ over the columns of `vectors`.
Matrix outer_product_sum(const Matrix& vectors, Execution exec);

/// Σ_i Σ_j ⟨v_i, v_j⟩² over the columns of `vectors`.
double pairwise_inner_square_sum(const Matrix& vectors, Execution exec);

}  // namespace kernels
}  // namespace ltiframe
