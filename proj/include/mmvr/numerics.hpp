#pragma once

// Complex dense kernel shared by the beamforming stages: SVD with a fixed
// phase convention and entry-wise constant-modulus projection.

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "mmvr/error.hpp"

namespace mmvr {

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrixXd = ComplexMatrix<double>;
using ComplexVectorXd = ComplexVector<double>;

/// Full SVD, `input = left * diag(singular_values) * right^H`.
///
/// `left` is m x m, `right` is n x n, both unitary. `singular_values` holds
/// min(m, n) non-negative entries in descending order.
template <typename Scalar>
struct SvdResult {
  ComplexMatrix<Scalar> left;
  RealVector<Scalar> singular_values;
  ComplexMatrix<Scalar> right;
};

namespace detail {

// Index of the largest-magnitude entry. Entries within a relative 1e-12 of
// the maximum count as ties and the first one wins, so the pick does not
// flicker on rounding noise between equal-modulus entries.
template <typename Derived>
Eigen::Index phase_pivot(const Eigen::MatrixBase<Derived>& column) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const Real largest = column.cwiseAbs().maxCoeff();
  const Real threshold = largest * (Real(1) - Real(1e-12));
  for (Eigen::Index k = 0; k < column.size(); ++k) {
    if (std::abs(column(k)) >= threshold) return k;
  }
  return 0;
}

template <typename Derived>
std::complex<typename Eigen::NumTraits<typename Derived::Scalar>::Real> unit_phase_of_pivot(
    const Eigen::MatrixBase<Derived>& column) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const auto z = column(phase_pivot(column));
  const Real magnitude = std::abs(z);
  if (magnitude == Real(0)) return {Real(1), Real(0)};
  return z / magnitude;
}

}  // namespace detail

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto z = std::complex<double>(m(i, j));
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

/// Singular value decomposition with a deterministic phase convention:
/// every left singular vector is rotated so its largest-magnitude entry is
/// real and non-negative, and the paired right vector receives the same
/// rotation. Right vectors with no paired left vector (n > m) get the same
/// convention on their own.
///
/// Throws InvalidInput for an empty or non-finite matrix.
template <typename Derived>
SvdResult<typename Eigen::NumTraits<typename Derived::Scalar>::Real> svd(
    const Eigen::MatrixBase<Derived>& input) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Matrix = ComplexMatrix<Real>;

  if (input.rows() < 1 || input.cols() < 1)
    throw InvalidInput("svd: matrix must have at least one row and one column");
  if (!all_finite(input)) throw InvalidInput("svd: matrix has non-finite entries");

  const Matrix a = input.template cast<std::complex<Real>>();
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);

  SvdResult<Real> out{solver.matrixU(), solver.singularValues(), solver.matrixV()};

  const Eigen::Index paired = out.singular_values.size();
  for (Eigen::Index k = 0; k < out.left.cols(); ++k) {
    const std::complex<Real> phase = detail::unit_phase_of_pivot(out.left.col(k));
    out.left.col(k) *= std::conj(phase);
    if (k < paired) out.right.col(k) *= std::conj(phase);
  }
  for (Eigen::Index k = paired; k < out.right.cols(); ++k) {
    const std::complex<Real> phase = detail::unit_phase_of_pivot(out.right.col(k));
    out.right.col(k) *= std::conj(phase);
  }
  return out;
}

/// Projects every entry onto the circle of radius `target_modulus`, keeping
/// its phase. Entries with modulus below 1e-15 carry no usable phase and map
/// to `target_modulus` on the real axis.
template <typename Derived>
ComplexMatrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real> unit_modulus_normalize(
    const Eigen::MatrixBase<Derived>& m,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real target_modulus) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (!(target_modulus > Real(0)))
    throw InvalidInput("unit_modulus_normalize: target modulus must be positive");

  ComplexMatrix<Real> out = m.template cast<std::complex<Real>>();
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      const std::complex<Real> z = out(i, j);
      const Real magnitude = std::abs(z);
      out(i, j) = magnitude < Real(1e-15) ? std::complex<Real>(target_modulus, Real(0))
                                          : std::polar(target_modulus, std::arg(z));
    }
  return out;
}

/// Largest deviation of |entry| from `target_modulus`.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real max_modulus_deviation(
    const Eigen::MatrixBase<Derived>& m,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real target_modulus) {
  return (m.cwiseAbs().array() - target_modulus).abs().maxCoeff();
}

/// Frobenius distance of m^H m from the identity.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real unitarity_error(
    const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  const ComplexMatrix<Real> gram = m.adjoint() * m;
  return (gram - ComplexMatrix<Real>::Identity(gram.rows(), gram.cols())).norm();
}

}  // namespace mmvr
