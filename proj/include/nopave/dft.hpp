#pragma once

#include "nopave/types.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace nopave {

/// Unitary m x m DFT matrix, entry (i, j) = exp(2*pi*I*((i*j) mod m)/m)/sqrt(m)
/// with 0-based i, j and the positive-exponent root fixed throughout. Every
/// entry has modulus 1/sqrt(m).
inline ComplexMatrix dft(Index m) {
  if (m < 1)
    throw std::invalid_argument("dft: size must be >= 1, got " + std::to_string(m));
  ComplexMatrix f(m, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      f(i, j) = std::polar(scale, step * static_cast<double>((i * j) % m));
  return f;
}

/// Per-column scaling factors; every entry finite and >= 0.
using ColumnScaling = RealVector;

/// Multiplies column j by factors[j].
template <typename Derived>
detail::PlainMatrix<Derived> scale_columns(const Eigen::MatrixBase<Derived>& a,
                                           const ColumnScaling& factors) {
  if (factors.size() != a.cols())
    throw std::invalid_argument(
        "scale_columns: " + std::to_string(factors.size()) + " factors for " +
        std::to_string(a.cols()) + " columns");
  for (Index j = 0; j < factors.size(); ++j)
    if (!(std::isfinite(factors[j]) && factors[j] >= 0.0))
      throw std::invalid_argument("scale_columns: factor at column " +
                                  std::to_string(j) +
                                  " is negative or not finite");
  using Scalar = typename Derived::Scalar;
  return a * factors.template cast<Scalar>().asDiagonal();
}

}  // namespace nopave
