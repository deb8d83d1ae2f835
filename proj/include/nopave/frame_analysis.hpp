#pragma once

#include "nopave/counterexample.hpp"
#include "nopave/types.hpp"

#include <vector>

namespace nopave {

/// Sorted, duplicate-free set of 1-based indices drawn from {1..max_index}.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::vector<Index> indices, Index max_index);

  static IndexSet full(Index max_index);

  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<Index>& indices() const { return indices_; }
  Index max_index() const { return max_index_; }

 private:
  std::vector<Index> indices_;
  Index max_index_ = 0;
};

/// lambda_min values within this distance below zero are reported as zero.
inline constexpr double kRieszClampTolerance = 1e-8;

/// Gram matrix of the selected frame vectors: entry (p, q) = <f_{i_q}, f_{i_p}>.
ComplexMatrix gram(const CounterexampleFrame& frame, const IndexSet& subset);

/// lambda_min of the Gram matrix; +infinity for the empty subset. Tiny
/// negative values (>= -1e-8) round to 0, anything lower is returned raw.
double riesz_lower_bound(const CounterexampleFrame& frame, const IndexSet& subset);

/// Operator norm of the principal submatrix m[S, S]; 0 for the empty subset.
double paving_norm(const ComplexMatrix& m, const IndexSet& subset);

/// For a projection G, lambda_min(G[S,S]) + ||(I-G)[S,S]|| = 1 exactly.
struct BoundReport {
  IndexSet subset;
  double riesz_lower = 0;             // lambda_min(G[S,S]), unclamped
  double paving_norm_complement = 0;  // ||(I-G)[S,S]||
  double duality_residual = 0;        // |riesz_lower + paving_norm_complement - 1|
};

BoundReport duality_check(const ComplexMatrix& projection, const IndexSet& subset);
BoundReport duality_check(const CounterexampleFrame& frame, const IndexSet& subset);

}  // namespace nopave
