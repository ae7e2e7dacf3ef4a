#include "qcorr/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

void require_finite(double value, std::string_view name) {
  if (!std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be finite");
  }
}

}  // namespace

void ModelParams::validate() const {
  require_finite(jx, "jx");
  require_finite(jy, "jy");
  require_finite(jz, "jz");
  require_finite(dz, "dz");
  require_finite(temp, "temp");
  if (!(temp > 0.0)) throw InvalidArgument("temp must be > 0, got " + std::to_string(temp));
}

XStateElements XStateElements::from_entries(double r, double s, double u, Complex v) {
  XStateElements e;
  e.r = r;
  e.s = s;
  e.u = u;
  e.v = v;
  e.r_plus_s = r + s;
  e.r_minus_s = r - s;
  e.u_plus_v = u + std::abs(v);
  e.u_minus_v = u - std::abs(v);
  return e;
}

HermitianMatrix hamiltonian(const ModelParams& p) {
  p.validate();
  const HermitianMatrix sx = pauli(Axis::x);
  const HermitianMatrix sy = pauli(Axis::y);
  const HermitianMatrix sz = pauli(Axis::z);
  return p.jx * kron(sx, sx) + p.jy * kron(sy, sy) + p.jz * kron(sz, sz) +
         p.dz * (kron(sx, sy) - kron(sy, sx));
}

SpectralData spectrum(const ModelParams& p) {
  p.validate();
  SpectralData out;
  const double sum = p.jx + p.jy;
  out.kappa = std::sqrt(4.0 * p.dz * p.dz + sum * sum);
  out.energies = {p.jx - p.jy + p.jz, -p.jx + p.jy + p.jz, -p.jz + out.kappa, -p.jz - out.kappa};

  if (out.kappa < kDegenerateKappa) {
    out.degenerate = true;
    out.theta = 0.0;
    out.phase = 1.0;
  } else {
    out.theta = std::acos(std::clamp(sum / out.kappa, -1.0, 1.0));
    out.phase = std::conj(Complex(sum, 2.0 * p.dz)) / out.kappa;
  }

  const double h = std::numbers::sqrt2 / 2.0;
  out.eigenstates[0] = {h, 0.0, 0.0, h};
  out.eigenstates[1] = {h, 0.0, 0.0, -h};
  out.eigenstates[2] = {0.0, h, h * out.phase, 0.0};
  out.eigenstates[3] = {0.0, h, -h * out.phase, 0.0};
  return out;
}

DensityMatrix thermal_state(const ModelParams& p) {
  p.validate();
  const EigenDecomposition e = eigh(hamiltonian(p));
  const double ground = e.values[0];
  std::array<double, 4> weights{};
  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    weights[k] = std::exp(-(e.values[k] - ground) / p.temp);
    total += weights[k];
  }
  for (double& w : weights) w /= total;
  return DensityMatrix::from_ensemble(weights, e.vectors);
}

XStateElements closed_form_elements(const ModelParams& p) {
  p.validate();
  const SpectralData sp = spectrum(p);
  const double t = p.temp;

  // Exponents of the four Boltzmann factors: -E_k / T.
  const double x_r_plus = (-p.jz - (p.jx - p.jy)) / t;   // Phi1
  const double x_r_minus = (-p.jz + (p.jx - p.jy)) / t;  // Phi2
  const double x_u_minus = (p.jz - sp.kappa) / t;        // Phi3
  const double x_u_plus = (p.jz + sp.kappa) / t;         // Phi4
  const double shift = std::max({x_r_plus, x_r_minus, x_u_minus, x_u_plus});

  // e^{a} cosh(b) and e^{a} sinh(b), scaled by e^{-shift}.
  const auto cosh_term = [shift](double a, double b) {
    return 0.5 * (std::exp(a + b - shift) + std::exp(a - b - shift));
  };
  const auto sinh_term = [shift](double a, double b) {
    return 0.5 * (std::exp(a + b - shift) - std::exp(a - b - shift));
  };

  const double a_r = -p.jz / t;
  const double b_r = (p.jx - p.jy) / t;
  const double a_u = p.jz / t;
  const double b_u = sp.kappa / t;

  const double z_scaled = 2.0 * cosh_term(a_r, b_r) + 2.0 * cosh_term(a_u, b_u);

  XStateElements e;
  e.z_partition = z_scaled * std::exp(shift);
  e.r = cosh_term(a_r, b_r) / z_scaled;
  e.s = sinh_term(a_r, -b_r) / z_scaled;
  e.u = cosh_term(a_u, b_u) / z_scaled;
  const double v_abs = sinh_term(a_u, b_u) / z_scaled;
  e.v = sp.degenerate ? Complex{} : -v_abs * Complex(p.jx + p.jy, 2.0 * p.dz) / sp.kappa;

  e.r_plus_s = std::exp(x_r_plus - shift) / z_scaled;
  e.r_minus_s = std::exp(x_r_minus - shift) / z_scaled;
  e.u_plus_v = std::exp(x_u_plus - shift) / z_scaled;
  e.u_minus_v = std::exp(x_u_minus - shift) / z_scaled;
  return e;
}

}  // namespace qcorr
