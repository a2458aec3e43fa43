#include "ltiframe/kernels.hpp"

#include <algorithm>

#include "ltiframe/errors.hpp"

namespace ltiframe::kernels {

namespace {

struct ChunkRange {
  Eigen::Index begin;
  Eigen::Index end;
};

ChunkRange chunk(Eigen::Index total, int index) {
  const Eigen::Index begin = total * index / kReductionChunks;
  const Eigen::Index end = total * (index + 1) / kReductionChunks;
  return {begin, end};
}

// Accumulates f(i) over [0, total) into an rows×cols matrix, one partial per
// chunk, and adds the partials in chunk order.
template <typename Body>
Matrix chunked_matrix_sum(Eigen::Index total, Eigen::Index rows,
                          Eigen::Index cols, Body&& body) {
  std::vector<Matrix> partial(kReductionChunks, Matrix::Zero(rows, cols));
#pragma omp parallel for schedule(static)
  for (int c = 0; c < kReductionChunks; ++c) {
    const ChunkRange r = chunk(total, c);
    for (Eigen::Index i = r.begin; i < r.end; ++i) body(i, partial[c]);
  }
  Matrix sum = Matrix::Zero(rows, cols);
  for (const Matrix& p : partial) sum += p;
  return sum;
}

}  // namespace

PropagatorTable tabulate_propagator(const Matrix& a, const Matrix& b,
                                    double horizon,
                                    const linalg::QuadratureRule& rule,
                                    Execution exec) {
  if (a.rows() != b.rows()) throw DimensionError("A and B row counts differ");
  const Eigen::Index nodes = rule.nodes.size();
  PropagatorTable table{rule, std::vector<Matrix>(nodes)};
  for_each_index(nodes, exec, [&](Eigen::Index k) {
    table.samples[k] = linalg::mat_exp((horizon - rule.nodes[k]) * a) * b;
  });
  return table;
}

Matrix weighted_outer_sum(const PropagatorTable& table, Execution exec) {
  const Eigen::Index n = table.samples.empty() ? 0 : table.samples.front().rows();
  const Eigen::Index nodes = table.rule.nodes.size();
  if (exec == Execution::serial) {
    Matrix sum = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < nodes; ++k) {
      const Matrix& kb = table.samples[k];
      sum.noalias() += table.rule.weights[k] * kb * kb.transpose();
    }
    return linalg::symmetrize(sum);
  }
  return linalg::symmetrize(
      chunked_matrix_sum(nodes, n, n, [&](Eigen::Index k, Matrix& acc) {
        const Matrix& kb = table.samples[k];
        acc.noalias() += table.rule.weights[k] * kb * kb.transpose();
      }));
}

Vector weighted_input_sum(const PropagatorTable& table, const Matrix& inputs) {
  const Eigen::Index nodes = table.rule.nodes.size();
  if (inputs.cols() != nodes) {
    throw DimensionError("input samples do not match the quadrature nodes");
  }
  const Eigen::Index n = table.samples.empty() ? 0 : table.samples.front().rows();
  Vector sum = Vector::Zero(n);
  for (Eigen::Index k = 0; k < nodes; ++k) {
    sum.noalias() += table.rule.weights[k] * table.samples[k] * inputs.col(k);
  }
  return sum;
}

Matrix project_onto_basis(const PropagatorTable& table,
                          const Matrix& scalar_values, Execution exec) {
  const Eigen::Index nodes = table.rule.nodes.size();
  if (scalar_values.cols() != nodes) {
    throw DimensionError("basis samples do not match the quadrature nodes");
  }
  if (nodes == 0) return Matrix();
  const Eigen::Index n = table.samples.front().rows();
  const Eigen::Index m = table.samples.front().cols();
  const Eigen::Index degrees = scalar_values.rows();

  Matrix out(n, degrees * m);
  for_each_index(degrees, exec, [&](Eigen::Index d) {
    Matrix block = Matrix::Zero(n, m);
    for (Eigen::Index k = 0; k < nodes; ++k) {
      block.noalias() +=
          (table.rule.weights[k] * scalar_values(d, k)) * table.samples[k];
    }
    out.middleCols(d * m, m) = block;
  });
  return out;
}

Matrix outer_product_sum(const Matrix& vectors, Execution exec) {
  const Eigen::Index n = vectors.rows();
  const Eigen::Index count = vectors.cols();
  if (exec == Execution::serial) {
    Matrix sum = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < count; ++i) {
      sum.noalias() += vectors.col(i) * vectors.col(i).transpose();
    }
    return linalg::symmetrize(sum);
  }
  return linalg::symmetrize(
      chunked_matrix_sum(count, n, n, [&](Eigen::Index i, Matrix& acc) {
        acc.noalias() += vectors.col(i) * vectors.col(i).transpose();
      }));
}

double pairwise_inner_square_sum(const Matrix& vectors, Execution exec) {
  const Eigen::Index count = vectors.cols();
  auto row_sum = [&](Eigen::Index i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < count; ++j) {
      const double ip = vectors.col(i).dot(vectors.col(j));
      s += ip * ip;
    }
    return s;
  };
  if (exec == Execution::serial) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < count; ++i) total += row_sum(i);
    return total;
  }
  std::vector<double> partial(kReductionChunks, 0.0);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < kReductionChunks; ++c) {
    const ChunkRange r = chunk(count, c);
    for (Eigen::Index i = r.begin; i < r.end; ++i) partial[c] += row_sum(i);
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace ltiframe::kernels
