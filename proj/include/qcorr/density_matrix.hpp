#pragma once

#include <array>
#include <span>

#include "qcorr/linalg.hpp"

namespace qcorr {

/// Two-qubit state: a 4x4 Hermitian, unit-trace, positive semidefinite
/// matrix stored together with its eigen-decomposition.
///
/// States assembled from a known ensemble (e.g. a Gibbs state) keep the exact
/// ensemble weights as their spectrum, so eigenvalues far below machine
/// epsilon relative to the largest one are not lost to rediagonalization.
class DensityMatrix {
 public:
  /// Diagonalizes `m`. Throws InvalidArgument if dim != 4 or the trace is off
  /// by more than 1e-10, NumericalError if an eigenvalue is below -1e-12.
  static DensityMatrix from_matrix(const HermitianMatrix& m);

  /// rho = sum_k weights[k] |v_k><v_k| with v_k the k-th column of `vectors`.
  /// Weights must be nonnegative and sum to one within 1e-12; the columns
  /// must be orthonormal within 1e-10.
  static DensityMatrix from_ensemble(std::span<const double> weights, const ComplexMatrix& vectors);

  static DensityMatrix pure(std::span<const Complex> state);
  static DensityMatrix maximally_mixed();

  const HermitianMatrix& matrix() const { return matrix_; }
  /// Eigenvalues ascending, clamped at zero.
  const EigenDecomposition& spectrum() const { return spectrum_; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return matrix_(row, col); }

  /// Principal square root built from the stored spectrum.
  HermitianMatrix sqrt() const;

 private:
  DensityMatrix(HermitianMatrix m, EigenDecomposition e)
      : matrix_(std::move(m)), spectrum_(std::move(e)) {}

  HermitianMatrix matrix_;
  EigenDecomposition spectrum_;
};

}  // namespace qcorr
