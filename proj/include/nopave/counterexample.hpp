#pragma once

#include "nopave/dft.hpp"
#include "nopave/rational.hpp"
#include "nopave/types.hpp"

#include <vector>

namespace nopave {

// The stack consists of r copies of the rn x rn DFT, each with its columns
// rescaled. Block k zeroes the first (k-1)(n-1) columns, scales the next n-1
// by sqrt(r - sum_{i<k} delta_i), and the remaining columns by sqrt(delta_k).
// The delta_k are the unique positive constants that make every row of the
// stack square-sum to 1; their partial sums telescope, columns square-sum to
// r while staying orthogonal, and (1/r) B B^* becomes an orthogonal
// projection with constant diagonal 1/r. The point of the construction is
// that restricting any block of any r-partition of the rows to a row block
// D_k produces a family with Riesz lower bound at most delta_k, and
// delta_k -> 0 as n grows.

/// delta_k = r^2 n / (((r-k+1)n + k-1) * ((r-k)n + k)), 1 <= k <= r.
double delta(int r, int n, int k);
Rational delta_rational(int r, int n, int k);

/// Telescoped partial sum: sum_{j<=k} delta_j = rk / ((r-k)n + k), 0 <= k <= r.
double delta_partial_sum(int r, int n, int k);
Rational delta_partial_sum_rational(int r, int n, int k);

/// Column scaling factors of block k: (k-1)(n-1) zeros, then n-1 copies of
/// sqrt(r - sum_{i<k} delta_i), then sqrt(delta_k) for the rest.
ColumnScaling block_scaling(const FrameParams& params, int k);

/// Block k of the stack: dft(rn) with block_scaling applied. Every row
/// square-sums to 1.
ComplexMatrix build_block(const FrameParams& params, int k);

/// The assembled r^2*n x rn stack with its bookkeeping.
struct CounterexampleFrame {
  FrameParams params;
  ComplexMatrix stacked;
  std::vector<double> deltas;         // delta_1 .. delta_r
  std::vector<Rational> deltas_exact;
  std::vector<IndexRange> row_blocks;     // D_k, 1-based, each of size rn
  std::vector<IndexRange> column_groups;  // r-1 width-(n-1) groups, then the tail

  Index rows() const { return stacked.rows(); }
  Index cols() const { return stacked.cols(); }

  /// Which row block a 1-based row index falls in.
  int block_of_row(Index row) const;

  /// Row i of the stack (1-based) as a column vector.
  ComplexVector frame_vector(Index row) const;
};

CounterexampleFrame build_stack(const FrameParams& params);

/// All rows of the stack as column vectors f_1 .. f_{r^2 n}.
std::vector<ComplexVector> frame_vectors(const CounterexampleFrame& frame);

/// G = (1/r) B B^*: Hermitian, idempotent, diagonal constant 1/r, trace rn.
ComplexMatrix build_projection(const FrameParams& params);
ComplexMatrix projection_of(const CounterexampleFrame& frame);

}  // namespace nopave
