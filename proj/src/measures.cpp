#include "qcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

constexpr double kUnitTolerance = 1e-12;
constexpr double kDenominatorFloor = 1e-12;
constexpr double kRefineStop = 1e-7;

const std::array<HermitianMatrix, 3>& local_paulis() {
  static const std::array<HermitianMatrix, 3> ops = [] {
    const HermitianMatrix id = HermitianMatrix::identity(2);
    return std::array<HermitianMatrix, 3>{kron(pauli(Axis::x), id), kron(pauli(Axis::y), id),
                                          kron(pauli(Axis::z), id)};
  }();
  return ops;
}

// V^dagger A V.
ComplexMatrix in_eigenbasis(const EigenDecomposition& e, const ComplexMatrix& a) {
  return e.vectors.adjoint() * a * e.vectors;
}

// sum_{m,n} kernel(l_m, l_n) Re[<m|s_i|n><n|s_j|m>]
template <typename Kernel>
RealSymmetric3 kernel_matrix(const DensityMatrix& rho, Kernel&& kernel) {
  const EigenDecomposition& e = rho.spectrum();
  std::array<ComplexMatrix, 3> s{ComplexMatrix(4), ComplexMatrix(4), ComplexMatrix(4)};
  for (std::size_t i = 0; i < 3; ++i) s[i] = in_eigenbasis(e, local_paulis()[i].matrix());

  std::array<std::array<double, 3>, 3> out{};
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      const double k = kernel(e.values[m], e.values[n]);
      if (k == 0.0) continue;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i; j < 3; ++j) out[i][j] += k * (s[i](m, n) * s[j](n, m)).real();
    }
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) out[i][j] = out[j][i];
  return RealSymmetric3(out);
}

double harmonic_kernel(double a, double b) {
  const double sum = a + b;
  return sum > kSpectralEpsilon ? 2.0 * a * b / sum : 0.0;
}

double geometric_kernel(double a, double b) { return std::sqrt(a) * std::sqrt(b); }

MeasureResult from_matrix(const RealSymmetric3& m) {
  const DominantEigen top = max_eig_sym3(m);
  MeasureResult r;
  r.value = std::max(0.0, 1.0 - top.value);
  r.direction = DirectionVector(top.direction);
  r.matrix = m;
  return r;
}

// 4 a b / (a + b), with a vanishing denominator contributing nothing.
double harmonic_term(double a, double b) {
  const double sum = a + b;
  return sum < kDenominatorFloor ? 0.0 : 4.0 * a * b / sum;
}

double root(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace

// ---------------------------------------------------------------------------

DirectionVector::DirectionVector(const std::array<double, 3>& n) : n_(n) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (!(std::abs(norm - 1.0) <= kUnitTolerance)) {
    throw InvalidArgument("direction must be a unit vector, |n| = " + std::to_string(norm));
  }
}

DirectionVector DirectionVector::from_angles(double polar, double azimuth) {
  std::array<double, 3> n{std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
                          std::cos(polar)};
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  for (double& x : n) x /= norm;
  return DirectionVector(n);
}

HermitianMatrix local_observable(const DirectionVector& n) {
  const auto& s = local_paulis();
  return n[0] * s[0] + n[1] * s[1] + n[2] * s[2];
}

double qfi(const DensityMatrix& rho, const HermitianMatrix& h) {
  const EigenDecomposition& e = rho.spectrum();
  const ComplexMatrix hm = in_eigenbasis(e, h.matrix());
  double f = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      if (m == n) continue;
      const double sum = e.values[m] + e.values[n];
      if (sum <= kSpectralEpsilon) continue;
      const double diff = e.values[m] - e.values[n];
      f += diff * diff / sum * std::norm(hm(m, n));
    }
  }
  return 0.5 * f;
}

RealSymmetric3 lqfi_matrix(const DensityMatrix& rho) { return kernel_matrix(rho, harmonic_kernel); }

MeasureResult lqfi(const DensityMatrix& rho) { return from_matrix(lqfi_matrix(rho)); }

double variance(const DensityMatrix& rho, const HermitianMatrix& k) {
  const ComplexMatrix& r = rho.matrix().matrix();
  const ComplexMatrix rk = r * k.matrix();
  const double mean = rk.trace().real();
  const double second = (rk * k.matrix()).trace().real();
  return second - mean * mean;
}

double skew_information(const DensityMatrix& rho, const HermitianMatrix& k) {
  const EigenDecomposition& e = rho.spectrum();
  const ComplexMatrix km = in_eigenbasis(e, k.matrix());
  double second = 0.0;
  double overlap = 0.0;
  for (std::size_t m = 0; m < 4; ++m) {
    for (std::size_t n = 0; n < 4; ++n) {
      const double mag = std::norm(km(m, n));
      second += e.values[m] * mag;
      overlap += geometric_kernel(e.values[m], e.values[n]) * mag;
    }
  }
  return second - overlap;
}

RealSymmetric3 lqu_matrix(const DensityMatrix& rho) { return kernel_matrix(rho, geometric_kernel); }

MeasureResult lqu(const DensityMatrix& rho) { return from_matrix(lqu_matrix(rho)); }

std::array<double, 3> closed_form_w_diag(const XStateElements& e) {
  const double a = e.r_plus_s;
  const double b = e.r_minus_s;
  const double c = e.u_plus_v;
  const double d = e.u_minus_v;
  const double w11 = harmonic_term(b, d) + harmonic_term(a, c);
  const double w22 = harmonic_term(a, d) + harmonic_term(b, c);
  // 2(u^2 - |v|^2)/u + 2(r^2 - s^2)/r
  const double w33 = (e.u < kDenominatorFloor ? 0.0 : 2.0 * c * d / e.u) +
                     (e.r < kDenominatorFloor ? 0.0 : 2.0 * a * b / e.r);
  return {w11, w22, w33};
}

std::array<double, 3> closed_form_m_diag(const XStateElements& e) {
  const double a = root(e.r_plus_s);
  const double b = root(e.r_minus_s);
  const double c = root(e.u_plus_v);
  const double d = root(e.u_minus_v);
  return {2.0 * (b * d + a * c), 2.0 * (a * d + b * c), 2.0 * (d * c + b * a)};
}

// ---------------------------------------------------------------------------
// Brute-force oracle

namespace {

class Objective {
 public:
  Objective(const DensityMatrix& rho, Measure measure) : rho_(rho), measure_(measure) {
    if (measure_ == Measure::skew) root_ = matrix_sqrt(rho.matrix()).matrix();
  }

  double operator()(const DirectionVector& n) const {
    const HermitianMatrix h = local_observable(n);
    return measure_ == Measure::fisher ? fisher(h) : skew(h);
  }

 private:
  // tr(rho H^2) - sum_{m,n} 2 l_m l_n / (l_m + l_n) |<m|H|n>|^2
  double fisher(const HermitianMatrix& h) const {
    const ComplexMatrix& r = rho_.matrix().matrix();
    const double second = (r * h.matrix() * h.matrix()).trace().real();
    const EigenDecomposition& e = rho_.spectrum();
    const ComplexMatrix hm = e.vectors.adjoint() * h.matrix() * e.vectors;
    double pairs = 0.0;
    for (std::size_t m = 0; m < 4; ++m)
      for (std::size_t n = 0; n < 4; ++n) pairs += harmonic_kernel(e.values[m], e.values[n]) * std::norm(hm(m, n));
    return second - pairs;
  }

  // -1/2 tr([sqrt(rho), K]^2)
  double skew(const HermitianMatrix& k) const {
    const ComplexMatrix c = root_ * k.matrix() - k.matrix() * root_;
    return -0.5 * (c * c).trace().real();
  }

  const DensityMatrix& rho_;
  Measure measure_;
  ComplexMatrix root_{4};
};

}  // namespace

MeasureResult brute_force_min(const DensityMatrix& rho, Measure measure, int resolution) {
  if (resolution < 100) {
    throw InvalidArgument("brute-force resolution must be >= 100, got " + std::to_string(resolution));
  }
  const Objective objective(rho, measure);

  // Fibonacci sphere; ties keep the smallest index.
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = std::numeric_limits<double>::infinity();
  double best_polar = 0.0;
  double best_azimuth = 0.0;
  for (int i = 0; i < resolution; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / resolution;
    const double polar = std::acos(z);
    const double azimuth = std::fmod(golden_angle * i, 2.0 * std::numbers::pi);
    const double value = objective(DirectionVector::from_angles(polar, azimuth));
    if (value < best) {
      best = value;
      best_polar = polar;
      best_azimuth = azimuth;
    }
  }

  static constexpr std::array<std::array<int, 2>, 8> kStencil{
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
  double step = std::numbers::pi / resolution;
  while (step >= kRefineStop) {
    bool moved = false;
    for (const auto& [dp, da] : kStencil) {
      const double polar = best_polar + dp * step;
      const double azimuth = best_azimuth + da * step;
      const double value = objective(DirectionVector::from_angles(polar, azimuth));
      if (value < best) {
        best = value;
        best_polar = polar;
        best_azimuth = azimuth;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }

  MeasureResult r;
  r.value = best;
  r.direction = DirectionVector::from_angles(best_polar, best_azimuth);
  return r;
}

}  // namespace qcorr
