#include "qcorr/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

constexpr double kTraceTolerance = 1e-10;
constexpr double kWeightSumTolerance = 1e-12;
constexpr double kOrthonormalTolerance = 1e-10;

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const HermitianMatrix& m) {
  if (m.dim() != 4) throw InvalidArgument("density matrix must be 4x4");
  const double tr = m.matrix().trace().real();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw InvalidArgument("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  EigenDecomposition e = eigh(m);
  if (e.values[0] < -kPsdTolerance) {
    throw NumericalError("density matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(e.values[0]) + ")");
  }
  for (std::size_t k = 0; k < 4; ++k) e.values[k] = std::max(e.values[k], 0.0);
  return DensityMatrix(m, std::move(e));
}

DensityMatrix DensityMatrix::from_ensemble(std::span<const double> weights,
                                           const ComplexMatrix& vectors) {
  if (weights.size() != 4 || vectors.dim() != 4) {
    throw InvalidArgument("ensemble must have four weights and 4x4 vectors");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw InvalidArgument("ensemble weights must be finite and >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw InvalidArgument("ensemble weights sum to " + std::to_string(total) + ", expected 1");
  }
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  if ((gram - ComplexMatrix::identity(4)).max_abs() > kOrthonormalTolerance) {
    throw InvalidArgument("ensemble vectors are not orthonormal");
  }

  std::array<std::size_t, 4> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return weights[i] < weights[j]; });

  EigenDecomposition e;
  e.dim = 4;
  e.vectors = ComplexMatrix(4);
  for (std::size_t k = 0; k < 4; ++k) {
    e.values[k] = weights[order[k]];
    for (std::size_t i = 0; i < 4; ++i) e.vectors(i, k) = vectors(i, order[k]);
  }
  HermitianMatrix m = e.reconstruct();
  return DensityMatrix(std::move(m), std::move(e));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> state) {
  if (state.size() != 4) throw InvalidArgument("pure state must have four amplitudes");
  double norm = 0.0;
  for (const Complex& a : state) norm += std::norm(a);
  norm = std::sqrt(norm);
  if (!(norm > 0.0)) throw InvalidArgument("pure state has zero norm");

  // Complete |psi> to an orthonormal basis by Gram-Schmidt over e_0..e_3.
  ComplexMatrix basis(4);
  for (std::size_t i = 0; i < 4; ++i) basis(i, 0) = state[i] / norm;
  std::size_t filled = 1;
  for (std::size_t c = 0; c < 4 && filled < 4; ++c) {
    std::array<Complex, 4> v{};
    v[c] = 1.0;
    for (std::size_t k = 0; k < filled; ++k) {
      Complex overlap = 0.0;
      for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(basis(i, k)) * v[i];
      for (std::size_t i = 0; i < 4; ++i) v[i] -= overlap * basis(i, k);
    }
    double n = 0.0;
    for (const Complex& x : v) n += std::norm(x);
    n = std::sqrt(n);
    if (n < 1e-6) continue;
    for (std::size_t i = 0; i < 4; ++i) basis(i, filled) = v[i] / n;
    ++filled;
  }
  const std::array<double, 4> weights{1.0, 0.0, 0.0, 0.0};
  return from_ensemble(weights, basis);
}

DensityMatrix DensityMatrix::maximally_mixed() {
  const std::array<double, 4> weights{0.25, 0.25, 0.25, 0.25};
  return from_ensemble(weights, ComplexMatrix::identity(4));
}

HermitianMatrix DensityMatrix::sqrt() const {
  return spectrum_.reconstruct([](double x) { return std::sqrt(x); });
}

}  // namespace qcorr
