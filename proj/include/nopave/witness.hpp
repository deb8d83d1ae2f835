#pragma once

#include "nopave/partition.hpp"
#include "nopave/rational.hpp"

#include <string>

namespace nopave {

/// Orthogonal projection of C^ambient onto the first width coordinates.
struct CoordinateProjection {
  Index width = 0;
  Index ambient = 0;

  ComplexVector keep(const ComplexVector& v) const;        // P v
  ComplexVector complement(const ComplexVector& v) const;  // (I - P) v
};

/// Explicit unit coefficient vector showing that the rows of one partition
/// block, restricted to row block D_k, have Riesz lower bound at most
/// delta_k. Exists for every partition and every k <= r-1.
struct RieszWitness {
  int k = 0;
  int j = 0;                   // block label chosen by the pigeonhole rule
  IndexSet support;            // the rows of block j inside D_k
  ComplexVector coefficients;  // unit norm, one per support row
  double achieved = 0;         // || sum_i a_i f_i ||^2
  double bound = 0;            // delta_k
  Rational bound_exact;

  // Diagnostics fixed at construction time.
  double unscaled_tail_norm_sq = 0;  // squared tail norm of sum a_i g_i over plain DFT rows
  double constraint_residual = 0;    // || first-coordinates system * a ||
  double zero_prefix_max = 0;        // largest |entry| seen in the zeroed column prefix
};

/// Builds the witness for (partition, k), k in [1, r-1]:
/// picks the pigeonhole block inside D_k, then solves for unit coefficients
/// annihilating coordinates (k-1)(n-1)+1 .. k(n-1) of the combination. The
/// rows of D_k vanish on the first (k-1)(n-1) coordinates and carry a
/// uniform sqrt(delta_k) scaling beyond coordinate k(n-1), which pins the
/// achieved squared norm at delta_k times the unscaled tail, hence <= delta_k.
RieszWitness find_witness(const CounterexampleFrame& frame, const Partition& partition, int k);

struct WitnessVerification {
  bool ok = false;
  double recomputed = 0;           // || sum_i a_i f_i ||^2 summed directly
  double achieved_error = 0;       // |recomputed - witness.achieved|
  double coefficient_norm = 0;
  std::string failure;             // empty when ok
};

/// Recomputes the combination by direct summation and checks the witness
/// fields against it, including achieved <= bound + 1e-8.
WitnessVerification verify_witness(const CounterexampleFrame& frame,
                                   const RieszWitness& witness);

}  // namespace nopave
