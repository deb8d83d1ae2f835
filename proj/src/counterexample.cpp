#include "nopave/counterexample.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nopave {

namespace {

void check_delta_args(int r, int n, int k, int k_min) {
  if (r < 2) throw std::invalid_argument("delta: r must be >= 2");
  if (n < 1) throw std::invalid_argument("delta: n must be >= 1");
  if (k < k_min || k > r)
    throw std::out_of_range("delta: k = " + std::to_string(k) +
                            " outside [" + std::to_string(k_min) + ", " +
                            std::to_string(r) + "]");
}

}  // namespace

Rational delta_rational(int r, int n, int k) {
  check_delta_args(r, n, k, 1);
  const std::int64_t R = r, N = n, K = k;
  return Rational(R * R * N, ((R - K + 1) * N + K - 1) * ((R - K) * N + K));
}

double delta(int r, int n, int k) { return delta_rational(r, n, k).value(); }

Rational delta_partial_sum_rational(int r, int n, int k) {
  check_delta_args(r, n, k, 0);
  if (k == 0) return Rational(0);
  const std::int64_t R = r, N = n, K = k;
  return Rational(R * K, (R - K) * N + K);
}

double delta_partial_sum(int r, int n, int k) {
  return delta_partial_sum_rational(r, n, k).value();
}

ColumnScaling block_scaling(const FrameParams& params, int k) {
  const int r = params.r, n = params.n;
  check_delta_args(r, n, k, 1);
  const Index zeros = static_cast<Index>(k - 1) * (n - 1);
  const Index middle = n - 1;
  const Index cols = params.cols();
  // r - sum_{i<k} delta_i stays positive for k <= r; at k = r the middle
  // group is empty and the value coincides with delta_r anyway.
  const double head = (Rational(r) - delta_partial_sum_rational(r, n, k - 1)).value();
  ColumnScaling factors = ColumnScaling::Zero(cols);
  factors.segment(zeros, middle).setConstant(std::sqrt(head));
  factors.tail(cols - zeros - middle).setConstant(std::sqrt(delta(r, n, k)));
  return factors;
}

ComplexMatrix build_block(const FrameParams& params, int k) {
  return scale_columns(dft(params.cols()), block_scaling(params, k));
}

int CounterexampleFrame::block_of_row(Index row) const {
  if (row < 1 || row > rows())
    throw std::out_of_range("block_of_row: row " + std::to_string(row) +
                            " outside [1, " + std::to_string(rows()) + "]");
  return static_cast<int>((row - 1) / params.cols()) + 1;
}

ComplexVector CounterexampleFrame::frame_vector(Index row) const {
  if (row < 1 || row > rows())
    throw std::out_of_range("frame_vector: row " + std::to_string(row) +
                            " outside [1, " + std::to_string(rows()) + "]");
  return stacked.row(row - 1).transpose();
}

CounterexampleFrame build_stack(const FrameParams& params) {
  const int r = params.r, n = params.n;
  const Index block_rows = params.cols();
  ComplexMatrix stacked(params.rows(), params.cols());
  std::vector<double> deltas;
  std::vector<Rational> deltas_exact;
  std::vector<IndexRange> row_blocks;
  for (int k = 1; k <= r; ++k) {
    stacked.middleRows((k - 1) * block_rows, block_rows) = build_block(params, k);
    deltas_exact.push_back(delta_rational(r, n, k));
    deltas.push_back(deltas_exact.back().value());
    row_blocks.push_back({(k - 1) * block_rows + 1, k * block_rows});
  }
  std::vector<IndexRange> column_groups;
  for (int g = 1; g < r; ++g) {
    const Index first = static_cast<Index>(g - 1) * (n - 1) + 1;
    column_groups.push_back({first, first + (n - 1) - 1});
  }
  column_groups.push_back({static_cast<Index>(r - 1) * (n - 1) + 1, params.cols()});
  return {params, std::move(stacked), std::move(deltas), std::move(deltas_exact),
          std::move(row_blocks), std::move(column_groups)};
}

std::vector<ComplexVector> frame_vectors(const CounterexampleFrame& frame) {
  std::vector<ComplexVector> rows;
  rows.reserve(frame.rows());
  for (Index i = 1; i <= frame.rows(); ++i) rows.push_back(frame.frame_vector(i));
  return rows;
}

ComplexMatrix build_projection(const FrameParams& params) {
  return projection_of(build_stack(params));
}

ComplexMatrix projection_of(const CounterexampleFrame& frame) {
  const auto& b = frame.stacked;
  return (b * b.adjoint()) / static_cast<double>(frame.params.r);
}

}  // namespace nopave
