#include "nopave/witness.hpp"

#include "nopave/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nopave {

namespace {

constexpr double kZeroPrefixTolerance = 1e-12;
constexpr double kAchievedBoundTolerance = 1e-8;
constexpr double kRecomputeTolerance = 1e-9;
constexpr double kUnitNormTolerance = 1e-12;

}  // namespace

ComplexVector CoordinateProjection::keep(const ComplexVector& v) const {
  if (v.size() != ambient)
    throw std::invalid_argument("CoordinateProjection: vector of size " +
                                std::to_string(v.size()) + ", ambient is " +
                                std::to_string(ambient));
  ComplexVector out = ComplexVector::Zero(ambient);
  out.head(width) = v.head(width);
  return out;
}

ComplexVector CoordinateProjection::complement(const ComplexVector& v) const {
  if (v.size() != ambient)
    throw std::invalid_argument("CoordinateProjection: vector of size " +
                                std::to_string(v.size()) + ", ambient is " +
                                std::to_string(ambient));
  ComplexVector out = ComplexVector::Zero(ambient);
  out.tail(ambient - width) = v.tail(ambient - width);
  return out;
}

RieszWitness find_witness(const CounterexampleFrame& frame, const Partition& partition,
                          int k) {
  const int r = frame.params.r, n = frame.params.n;
  if (k < 1 || k > r - 1)
    throw std::out_of_range("find_witness: k = " + std::to_string(k) +
                            " outside [1, " + std::to_string(r - 1) + "]");
  const int j = pigeonhole_block(partition, frame, k);
  const IndexRange dk = frame.row_blocks[static_cast<std::size_t>(k - 1)];
  const auto support_rows = partition.block_in_range(j, dk);
  const auto support_size = static_cast<Index>(support_rows.size());

  const Index prefix = static_cast<Index>(k - 1) * (n - 1);  // columns already zero
  const Index constraints = n - 1;                           // columns to annihilate

  // The construction zeroes the first prefix columns of every row in D_k.
  double zero_prefix_max = 0;
  for (Index row : support_rows)
    for (Index c = 0; c < prefix; ++c)
      zero_prefix_max = std::max(zero_prefix_max, std::abs(frame.stacked(row - 1, c)));
  if (zero_prefix_max > kZeroPrefixTolerance)
    throw InternalError("find_witness: zeroed column prefix is not zero");

  // Columns past k(n-1) of block k all carry the same factor sqrt(delta_k).
  const ColumnScaling factors = block_scaling(frame.params, k);
  const double tail_factor = std::sqrt(frame.deltas[static_cast<std::size_t>(k - 1)]);
  for (Index c = prefix + constraints; c < frame.cols(); ++c)
    if (factors[c] != tail_factor)
      throw InternalError("find_witness: tail columns are not uniformly scaled");

  // Annihilate coordinates prefix+1 .. prefix+constraints of the combination:
  // support_size >= n unknowns against n-1 equations always leaves a nullspace.
  ComplexVector coefficients;
  if (constraints == 0) {
    coefficients = ComplexVector::Zero(support_size);
    coefficients(0) = 1.0;
  } else {
    ComplexMatrix system(constraints, support_size);
    for (Index t = 0; t < support_size; ++t)
      system.col(t) = frame.stacked.row(support_rows[static_cast<std::size_t>(t)] - 1)
                          .segment(prefix, constraints)
                          .transpose();
    const auto solved = nullspace_vector(system);
    if (!solved)
      throw InternalError("find_witness: annihilating system has no nullspace");
    coefficients = *solved;
  }

  ComplexVector combination = ComplexVector::Zero(frame.cols());
  for (Index t = 0; t < support_size; ++t)
    combination += coefficients(t) *
                   frame.stacked.row(support_rows[static_cast<std::size_t>(t)] - 1)
                       .transpose();

  // Against the plain DFT rows g_i the same combination has only its tail
  // surviving, and the scaled tail is exactly delta_k times it.
  const ComplexMatrix plain = dft(frame.cols());
  ComplexVector unscaled = ComplexVector::Zero(frame.cols());
  for (Index t = 0; t < support_size; ++t) {
    const Index local = support_rows[static_cast<std::size_t>(t)] - dk.first;
    unscaled += coefficients(t) * plain.row(local).transpose();
  }
  const CoordinateProjection head{prefix + constraints, frame.cols()};
  const double tail_norm_sq = head.complement(unscaled).squaredNorm();

  RieszWitness witness;
  witness.k = k;
  witness.j = j;
  witness.support = IndexSet(support_rows, frame.rows());
  witness.coefficients = std::move(coefficients);
  witness.achieved = combination.squaredNorm();
  witness.bound = frame.deltas[static_cast<std::size_t>(k - 1)];
  witness.bound_exact = frame.deltas_exact[static_cast<std::size_t>(k - 1)];
  witness.unscaled_tail_norm_sq = tail_norm_sq;
  witness.constraint_residual =
      constraints == 0 ? 0.0 : combination.segment(prefix, constraints).norm();
  witness.zero_prefix_max = zero_prefix_max;

  if (witness.achieved > witness.bound + kAchievedBoundTolerance)
    throw InternalError("find_witness: achieved value exceeds delta_k; construction bug");
  return witness;
}

WitnessVerification verify_witness(const CounterexampleFrame& frame,
                                   const RieszWitness& witness) {
  WitnessVerification v;
  const auto& rows = witness.support.indices();
  if (static_cast<Index>(rows.size()) != witness.coefficients.size()) {
    v.failure = "support size differs from coefficient count";
    return v;
  }
  if (rows.empty()) {
    v.failure = "empty support";
    return v;
  }
  if (witness.k < 1 || witness.k > frame.params.r - 1) {
    v.failure = "k outside [1, r-1]";
    return v;
  }
  const IndexRange dk = frame.row_blocks[static_cast<std::size_t>(witness.k - 1)];
  for (Index row : rows)
    if (!dk.contains(row)) {
      v.failure = "support row " + std::to_string(row) + " outside row block D_k";
      return v;
    }

  ComplexVector combination = ComplexVector::Zero(frame.cols());
  for (std::size_t t = 0; t < rows.size(); ++t)
    combination +=
        witness.coefficients(static_cast<Index>(t)) * frame.stacked.row(rows[t] - 1).transpose();
  v.recomputed = combination.squaredNorm();
  v.achieved_error = std::abs(v.recomputed - witness.achieved);
  v.coefficient_norm = witness.coefficients.norm();

  if (std::abs(v.coefficient_norm - 1.0) > kUnitNormTolerance)
    v.failure = "coefficient vector is not unit norm";
  else if (v.achieved_error > kRecomputeTolerance)
    v.failure = "recomputed norm differs from the stored achieved value";
  else if (v.recomputed > witness.bound + kAchievedBoundTolerance)
    v.failure = "recomputed norm exceeds the bound";
  else
    v.ok = true;
  return v;
}

}  // namespace nopave
