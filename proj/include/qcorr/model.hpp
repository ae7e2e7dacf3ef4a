#pragma once

// Two-qubit Heisenberg XYZ chain with a z-axis Dzyaloshinskii-Moriya term,
//
//   H = Jx sx.sx + Jy sy.sy + Jz sz.sz + Dz (sx.sy - sy.sx),
//
// at thermal equilibrium (k_B = 1). Two independent routes to the Gibbs
// state: exact diagonalization of the operator sum, and closed-form X-state
// elements derived from the analytic spectrum.

#include <array>
#include <string_view>

#include "qcorr/density_matrix.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

struct ModelParams {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double dz = 0.0;
  double temp = 1.0;

  /// Throws InvalidArgument naming the offending field when a value is not
  /// finite or temp <= 0.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Analytic spectrum. energies[k] belongs to eigenstates[k]:
///   Phi1,2 = (|00> +- |11>)/sqrt2,          E1,2 = +-(Jx - Jy) + Jz
///   Phi3,4 = (|01> +- phase |10>)/sqrt2,    E3,4 = -Jz +- kappa
/// with phase = conj(Jx + Jy + 2i Dz)/kappa (= e^{-i theta} for Dz >= 0).
struct SpectralData {
  std::array<double, 4> energies{};
  double kappa = 0.0;
  /// arccos((Jx + Jy)/kappa), in [0, pi]; 0 when kappa vanishes.
  double theta = 0.0;
  Complex phase{1.0, 0.0};
  std::array<std::array<Complex, 4>, 4> eigenstates{};
  /// kappa < 1e-14: Phi3/Phi4 span a degenerate subspace and the basis
  /// above is one arbitrary orthonormal choice.
  bool degenerate = false;
};

/// X-state elements of the Gibbs state:
///
///   [ r  0  0  s ]
///   [ 0  u  v  0 ]
///   [ 0  v* u  0 ]
///   [ s  0  0  r ]
///
/// The block eigenvalues r+-s and u+-|v| are stored alongside the elements.
/// When produced by closed_form_elements they are evaluated directly from
/// the Boltzmann factors rather than by subtraction.
struct XStateElements {
  double r = 0.0;
  double u = 0.0;
  double s = 0.0;
  Complex v{};
  double z_partition = 1.0;

  double r_plus_s = 0.0;
  double r_minus_s = 0.0;
  double u_plus_v = 0.0;
  double u_minus_v = 0.0;

  /// Builds elements from raw entries, deriving the block eigenvalues by
  /// arithmetic. z_partition is set to 1.
  static XStateElements from_entries(double r, double s, double u, Complex v);
};

inline constexpr double kDegenerateKappa = 1e-14;

HermitianMatrix hamiltonian(const ModelParams& p);
SpectralData spectrum(const ModelParams& p);

/// Gibbs state from exact diagonalization of hamiltonian(p), with Boltzmann
/// weights shifted by the ground energy.
DensityMatrix thermal_state(const ModelParams& p);

/// Closed-form Gibbs elements:
///   r = e^{-Jz/T} cosh((Jx-Jy)/T) / Z       s = e^{-Jz/T} sinh((Jy-Jx)/T) / Z
///   u = e^{ Jz/T} cosh(kappa/T) / Z
///   v = -e^{Jz/T} sinh(kappa/T) (Jx + Jy + 2i Dz) / (Z kappa)
///   Z = 2 e^{-Jz/T} cosh((Jx-Jy)/T) + 2 e^{Jz/T} cosh(kappa/T)
/// Every exponential is taken relative to the largest one, so nothing
/// overflows at low temperature; z_partition itself may be +inf in that case.
XStateElements closed_form_elements(const ModelParams& p);

}  // namespace qcorr
