#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace nopave {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown when an enumeration would exceed its labeling budget.
struct BudgetExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on unreadable or unwritable files.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on malformed file contents.
struct ParseError : IoError {
  using IoError::IoError;
};

/// Thrown when a quantity the construction guarantees fails to hold.
/// Always indicates a bug, never bad user input.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Parameters of the stacked construction: r column-scaled rn x rn DFT
/// blocks stacked into an r^2*n x rn matrix.
struct FrameParams {
  int r;
  int n;

  FrameParams(int r_, int n_) : r(r_), n(n_) {
    if (r < 2)
      throw std::invalid_argument("FrameParams: r must be >= 2, got " +
                                  std::to_string(r));
    if (n < 1)
      throw std::invalid_argument("FrameParams: n must be >= 1, got " +
                                  std::to_string(n));
  }

  Index rows() const { return static_cast<Index>(r) * r * n; }
  Index cols() const { return static_cast<Index>(r) * n; }
};

/// Inclusive 1-based index range [first, last]; empty when last < first.
struct IndexRange {
  Index first = 1;
  Index last = 0;

  Index size() const { return last >= first ? last - first + 1 : 0; }
  bool contains(Index i) const { return i >= first && i <= last; }
};

namespace detail {

template <typename Derived>
using PlainMatrix =
    Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Derived>
using PlainVector = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

inline std::string shape_string(Index rows, Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace detail

}  // namespace nopave
