#pragma once

#include "nopave/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace nopave {

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kNullspaceResidualTolerance = 1e-9;

namespace detail {

inline std::string format_scientific(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

template <typename Mat>
void require_hermitian(const Mat& m, const char* caller) {
  if (m.rows() != m.cols())
    throw std::invalid_argument(std::string(caller) + ": matrix is not square (" +
                                shape_string(m.rows(), m.cols()) + ")");
  if (m.rows() == 0)
    throw std::invalid_argument(std::string(caller) + ": matrix is empty");
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= kHermitianTolerance))
    throw std::invalid_argument(std::string(caller) +
                                ": matrix is not Hermitian, max |H - H^*| = " +
                                format_scientific(dev));
}

}  // namespace detail

/// Conjugate transpose, materialized.
template <typename Derived>
detail::PlainMatrix<Derived> adjoint(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint();
}

/// Matrix product with an explicit shape check.
template <typename DerivedA, typename DerivedB>
auto matmul(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument(
        "matmul: inner dimensions differ, " +
        detail::shape_string(a.rows(), a.cols()) + " * " +
        detail::shape_string(b.rows(), b.cols()));
  return (a * b).eval();
}

/// Largest entrywise deviation from Hermitian symmetry.
template <typename Derived>
detail::RealOf<Derived> hermitian_deviation(const Eigen::MatrixBase<Derived>& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_deviation: matrix is not square (" +
                                detail::shape_string(h.rows(), h.cols()) + ")");
  if (h.rows() == 0) return 0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
struct MinEigenpair {
  typename Eigen::NumTraits<Scalar>::Real value;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;  // unit norm
};

/// Smallest eigenvalue of a Hermitian matrix with a unit eigenvector.
/// Rejects input whose deviation from Hermitian symmetry exceeds 1e-10.
template <typename Derived>
MinEigenpair<typename Derived::Scalar> min_eigenpair_hermitian(
    const Eigen::MatrixBase<Derived>& h) {
  using Mat = detail::PlainMatrix<Derived>;
  Mat hm = h;
  detail::require_hermitian(hm, "min_eigenpair_hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(hm);
  if (solver.info() != Eigen::Success)
    throw InternalError("min_eigenpair_hermitian: eigensolver did not converge");
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

/// Smallest eigenvalue only; skips the eigenvector computation.
template <typename Derived>
detail::RealOf<Derived> min_eigenvalue_hermitian(
    const Eigen::MatrixBase<Derived>& h) {
  using Mat = detail::PlainMatrix<Derived>;
  Mat hm = h;
  detail::require_hermitian(hm, "min_eigenvalue_hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> solver(hm, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw InternalError("min_eigenvalue_hermitian: eigensolver did not converge");
  return solver.eigenvalues()(0);
}

/// Unit vector v with ||A v|| <= 1e-9 * max(1, ||A||_F), or nullopt when the
/// matrix has full column rank in that numerical sense.
template <typename Derived>
std::optional<detail::PlainVector<Derived>> nullspace_vector(
    const Eigen::MatrixBase<Derived>& a) {
  using Mat = detail::PlainMatrix<Derived>;
  using Real = detail::RealOf<Derived>;
  if (a.cols() < 1)
    throw std::invalid_argument("nullspace_vector: matrix has no columns");
  Mat m = a;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  detail::PlainVector<Derived> v = svd.matrixV().col(m.cols() - 1);
  const Real residual = (m * v).norm();
  if (residual <= Real(kNullspaceResidualTolerance) * std::max<Real>(1, m.norm()))
    return v;
  return std::nullopt;
}

/// Largest singular value.
template <typename Derived>
detail::RealOf<Derived> operator_norm(const Eigen::MatrixBase<Derived>& a) {
  using Mat = detail::PlainMatrix<Derived>;
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Mat m = a;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

}  // namespace nopave
