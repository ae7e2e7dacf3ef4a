#pragma once

// Local quantum Fisher information (LQFI) and local quantum uncertainty (LQU)
// of a two-qubit state with respect to local observables n.sigma (x) I on the
// first qubit.
//
// Three routes are provided and cross-checked in the tests:
//   - spectral: the 3x3 matrices W and M built from the state's eigenbasis,
//     measure = 1 - lambda_max;
//   - closed form: the X-state expressions for the eigenvalues of W and M;
//   - brute force: direct minimization of the Fisher / skew information over
//     unit directions.

#include <array>
#include <optional>

#include "qcorr/density_matrix.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/model.hpp"

namespace qcorr {

/// Unit vector in R^3.
class DirectionVector {
 public:
  /// Throws InvalidArgument unless |n| = 1 within 1e-12.
  explicit DirectionVector(const std::array<double, 3>& n);
  static DirectionVector from_angles(double polar, double azimuth);

  const std::array<double, 3>& components() const { return n_; }
  double operator[](std::size_t i) const { return n_[i]; }

 private:
  std::array<double, 3> n_;
};

struct MeasureResult {
  double value = 0.0;
  DirectionVector direction{{1.0, 0.0, 0.0}};
  /// W or M; empty for brute-force results.
  std::optional<RealSymmetric3> matrix;
};

enum class Measure { fisher, skew };

// Spectral sums skip pairs with lambda_m + lambda_n at or below this.
inline constexpr double kSpectralEpsilon = 1e-12;

/// n.sigma (x) I.
HermitianMatrix local_observable(const DirectionVector& n);

/// F = 1/2 sum_{m != n} (l_m - l_n)^2 / (l_m + l_n) |<m|h|n>|^2.
double qfi(const DensityMatrix& rho, const HermitianMatrix& h);

/// W_ij = sum over all (m, n) of 2 l_m l_n / (l_m + l_n) Re[<m|s_i|n><n|s_j|m>],
/// s_i = sigma_i (x) I. The m = n terms are included: they make
/// F(rho, n.s) = 1 - n^T W n exact for every state, classical ones included.
RealSymmetric3 lqfi_matrix(const DensityMatrix& rho);
MeasureResult lqfi(const DensityMatrix& rho);

double variance(const DensityMatrix& rho, const HermitianMatrix& k);

/// Wigner-Yanase skew information tr(rho k^2) - tr(sqrt(rho) k sqrt(rho) k).
double skew_information(const DensityMatrix& rho, const HermitianMatrix& k);

/// M_ij = tr(sqrt(rho) s_i sqrt(rho) s_j).
RealSymmetric3 lqu_matrix(const DensityMatrix& rho);
MeasureResult lqu(const DensityMatrix& rho);

/// Closed-form eigenvalues of W for an X state. In the frame where v is real
/// and positive these are the diagonal entries (W11, W22, W33) and W is
/// diagonal; otherwise W11/W22 are the eigenvalues of the x-y block.
std::array<double, 3> closed_form_w_diag(const XStateElements& e);
/// Same for M.
std::array<double, 3> closed_form_m_diag(const XStateElements& e);

/// Minimizes F(rho, n.s) (fisher) or I(rho, n.s) (skew) over unit n: scans a
/// Fibonacci sphere of `resolution` points, then refines the best point by
/// coordinate descent in (polar, azimuth) with an 8-neighbour stencil,
/// halving the step from pi/resolution until it drops below 1e-7.
/// Throws InvalidArgument if resolution < 100.
MeasureResult brute_force_min(const DensityMatrix& rho, Measure measure, int resolution);

}  // namespace qcorr
