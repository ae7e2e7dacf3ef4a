#pragma once

// Dense complex linear algebra for one- and two-qubit operators (dimension 2
// and 4). Everything here is a value type; no heap allocation.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace qcorr {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 4;

/// Square complex matrix of dimension 2 or 4, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::span<const Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// Largest entry modulus.
  double max_abs() const;
  double frobenius_norm() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// ComplexMatrix with the invariant a(i,j) == conj(a(j,i)).
///
/// Construction checks Hermiticity to 1e-12 elementwise and then symmetrizes
/// exactly, so the stored matrix is Hermitian to the last bit.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Trusted {};
  HermitianMatrix(const ComplexMatrix& m, Trusted) : m_(m) {}

  ComplexMatrix m_;
};

/// Eigenvalues in ascending order; column k of `vectors` is the unit
/// eigenvector for `values[k]`.
struct EigenDecomposition {
  std::size_t dim = 0;
  std::array<double, kMaxDim> values{};
  ComplexMatrix vectors{kMaxDim};

  /// V diag(f(lambda)) V^dagger.
  template <typename F>
  HermitianMatrix reconstruct(F&& f) const;
  HermitianMatrix reconstruct() const;
};

/// Real symmetric 3x3 matrix; holds the W and M correlation matrices.
class RealSymmetric3 {
 public:
  RealSymmetric3() = default;
  /// Symmetrizes the input: entry (i,j) becomes (a(i,j) + a(j,i)) / 2.
  explicit RealSymmetric3(const std::array<std::array<double, 3>, 3>& a);

  static RealSymmetric3 diagonal(double d0, double d1, double d2);

  double operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const std::array<std::array<double, 3>, 3>& entries() const { return a_; }

 private:
  std::array<std::array<double, 3>, 3> a_{};
};

enum class Axis { x, y, z };

/// Largest eigenvalue of a symmetric 3x3 matrix together with a unit
/// eigenvector.
struct DominantEigen {
  double value = 0.0;
  std::array<double, 3> direction{1.0, 0.0, 0.0};
};

// Jacobi sweep limits for eigh.
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiRelTol = 1e-14;
// Eigenvalues in [-kPsdTolerance, 0) count as roundoff and are clamped.
inline constexpr double kPsdTolerance = 1e-12;

HermitianMatrix pauli(Axis axis);

/// Kronecker product; the result dimension must not exceed 4.
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Cyclic complex Jacobi eigensolver. Deterministic: eigenvalues ascending,
/// each eigenvector's first component with modulus > 1e-10 made real
/// positive. Throws NumericalError if the sweep cap is reached.
EigenDecomposition eigh(const HermitianMatrix& a);

/// Principal square root of a positive semidefinite matrix. Throws
/// NumericalError when an eigenvalue is below -1e-12.
HermitianMatrix matrix_sqrt(const HermitianMatrix& a);

/// Householder tridiagonalization followed by implicit QL. Ties in the top
/// eigenvalue are broken by taking the normalized projection of the first
/// basis vector e_k with a nonzero component in the top eigenspace, sign
/// fixed so the first nonzero component is positive.
DominantEigen max_eig_sym3(const RealSymmetric3& w);

/// All three eigenvalues, ascending (same solver as max_eig_sym3).
std::array<double, 3> eigvals_sym3(const RealSymmetric3& w);

template <typename F>
HermitianMatrix EigenDecomposition::reconstruct(F&& f) const {
  ComplexMatrix out(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double fk = f(values[k]);
    for (std::size_t i = 0; i < dim; ++i) {
      const Complex vi = vectors(i, k) * fk;
      for (std::size_t j = 0; j < dim; ++j) out(i, j) += vi * std::conj(vectors(j, k));
    }
  }
  return HermitianMatrix(out);
}

}  // namespace qcorr
