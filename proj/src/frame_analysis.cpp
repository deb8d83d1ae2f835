#include "nopave/frame_analysis.hpp"

#include "nopave/linalg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace nopave {

IndexSet::IndexSet(std::vector<Index> indices, Index max_index)
    : indices_(std::move(indices)), max_index_(max_index) {
  if (max_index_ < 0)
    throw std::invalid_argument("IndexSet: negative max_index");
  std::sort(indices_.begin(), indices_.end());
  for (std::size_t p = 0; p < indices_.size(); ++p) {
    if (indices_[p] < 1 || indices_[p] > max_index_)
      throw std::out_of_range("IndexSet: index " + std::to_string(indices_[p]) +
                              " outside [1, " + std::to_string(max_index_) + "]");
    if (p > 0 && indices_[p] == indices_[p - 1])
      throw std::invalid_argument("IndexSet: duplicate index " +
                                  std::to_string(indices_[p]));
  }
}

IndexSet IndexSet::full(Index max_index) {
  std::vector<Index> all(static_cast<std::size_t>(max_index));
  for (Index i = 0; i < max_index; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return IndexSet(std::move(all), max_index);
}

namespace {

std::vector<Index> zero_based(const IndexSet& subset) {
  std::vector<Index> rows;
  rows.reserve(static_cast<std::size_t>(subset.size()));
  for (Index i : subset.indices()) rows.push_back(i - 1);
  return rows;
}

}  // namespace

ComplexMatrix gram(const CounterexampleFrame& frame, const IndexSet& subset) {
  if (subset.empty())
    throw std::invalid_argument("gram: empty subset");
  if (subset.max_index() != frame.rows())
    throw std::invalid_argument("gram: subset indexes " +
                                std::to_string(subset.max_index()) +
                                " rows, frame has " + std::to_string(frame.rows()));
  const ComplexMatrix rows = frame.stacked(zero_based(subset), Eigen::all);
  return rows.conjugate() * rows.transpose();
}

double riesz_lower_bound(const CounterexampleFrame& frame, const IndexSet& subset) {
  if (subset.empty()) return std::numeric_limits<double>::infinity();
  const double lambda = min_eigenvalue_hermitian(gram(frame, subset));
  if (lambda < 0 && lambda >= -kRieszClampTolerance) return 0.0;
  return lambda;
}

double paving_norm(const ComplexMatrix& m, const IndexSet& subset) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("paving_norm: matrix is not square (" +
                                detail::shape_string(m.rows(), m.cols()) + ")");
  if (subset.empty()) return 0.0;
  if (subset.max_index() > m.rows())
    throw std::out_of_range("paving_norm: subset indexes " +
                            std::to_string(subset.max_index()) +
                            " rows, matrix has " + std::to_string(m.rows()));
  const auto idx = zero_based(subset);
  return operator_norm(m(idx, idx));
}

BoundReport duality_check(const ComplexMatrix& projection, const IndexSet& subset) {
  if (subset.empty())
    throw std::invalid_argument("duality_check: empty subset");
  if (projection.rows() != projection.cols())
    throw std::invalid_argument("duality_check: matrix is not square");
  const auto idx = zero_based(subset);
  const ComplexMatrix sub = projection(idx, idx);
  const ComplexMatrix complement =
      ComplexMatrix::Identity(projection.rows(), projection.cols()) - projection;
  BoundReport report;
  report.subset = subset;
  report.riesz_lower = min_eigenvalue_hermitian(sub);
  report.paving_norm_complement = operator_norm(complement(idx, idx));
  report.duality_residual =
      std::abs(report.riesz_lower + report.paving_norm_complement - 1.0);
  return report;
}

BoundReport duality_check(const CounterexampleFrame& frame, const IndexSet& subset) {
  if (subset.max_index() != frame.rows())
    throw std::invalid_argument("duality_check: subset indexes " +
                                std::to_string(subset.max_index()) +
                                " rows, frame has " + std::to_string(frame.rows()));
  return duality_check(projection_of(frame), subset);
}

}  // namespace nopave
