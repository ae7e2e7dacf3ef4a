#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qcorr/error.hpp"

namespace qcorr {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kPhaseThreshold = 1e-10;

void check_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw InvalidArgument("matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) {
  // dim 0..4 is allowed here as scratch storage; the public types check 2/4.
  if (dim > kMaxDim) throw InvalidArgument("matrix dimension exceeds 4");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::span<const Complex> row_major)
    : ComplexMatrix(dim) {
  if (row_major.size() != dim * dim) {
    throw InvalidArgument("expected " + std::to_string(dim * dim) + " entries, got " +
                          std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (std::size_t k = 0; k < dim_ * dim_; ++k) m = std::max(m, std::abs(data_[k]));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t k = 0; k < dim_ * dim_; ++k) s += std::norm(data_[k]);
  return std::sqrt(s);
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(dim_ * dim_),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw InvalidArgument("dimension mismatch in matrix sum");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw InvalidArgument("dimension mismatch in matrix difference");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("dimension mismatch in matrix product");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.dim()) {
  check_dim(m.dim());
  if (!m.is_finite()) throw InvalidArgument("matrix has non-finite entries");
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex upper = m(i, j);
      const Complex lower = std::conj(m(j, i));
      if (std::abs(upper - lower) > kHermitianTolerance) {
        throw InvalidArgument("matrix is not Hermitian at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
      const Complex mean = 0.5 * (upper + lower);
      m_(i, j) = (i == j) ? Complex(mean.real(), 0.0) : mean;
      m_(j, i) = std::conj(m_(i, j));
    }
  }
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
  check_dim(dim);
  return HermitianMatrix(ComplexMatrix(dim), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  check_dim(dim);
  return HermitianMatrix(ComplexMatrix::identity(dim), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  check_dim(values.size());
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return HermitianMatrix(m);
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ + b.m_, HermitianMatrix::Trusted{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ - b.m_, HermitianMatrix::Trusted{});
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(a.m_ * Complex(s), HermitianMatrix::Trusted{});
}

HermitianMatrix EigenDecomposition::reconstruct() const {
  return reconstruct([](double x) { return x; });
}

// ---------------------------------------------------------------------------
// RealSymmetric3

RealSymmetric3::RealSymmetric3(const std::array<std::array<double, 3>, 3>& a) {
  for (std::size_t i = 0; i < 3; ++i) {
    a_[i][i] = a[i][i];
    for (std::size_t j = i + 1; j < 3; ++j) {
      a_[i][j] = a_[j][i] = 0.5 * (a[i][j] + a[j][i]);
    }
  }
}

RealSymmetric3 RealSymmetric3::diagonal(double d0, double d1, double d2) {
  return RealSymmetric3({{{d0, 0.0, 0.0}, {0.0, d1, 0.0}, {0.0, 0.0, d2}}});
}

// ---------------------------------------------------------------------------
// Operators

HermitianMatrix pauli(Axis axis) {
  using namespace std::complex_literals;
  switch (axis) {
    case Axis::x: {
      const std::array<Complex, 4> e{0.0, 1.0, 1.0, 0.0};
      return HermitianMatrix(ComplexMatrix(2, e));
    }
    case Axis::y: {
      const std::array<Complex, 4> e{0.0, -1.0i, 1.0i, 0.0};
      return HermitianMatrix(ComplexMatrix(2, e));
    }
    case Axis::z: {
      const std::array<Complex, 4> e{1.0, 0.0, 0.0, -1.0};
      return HermitianMatrix(ComplexMatrix(2, e));
    }
  }
  throw InvalidArgument("unknown Pauli axis");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  if (n > kMaxDim) {
    throw InvalidArgument("Kronecker product dimension " + std::to_string(n) + " exceeds 4");
  }
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l)
          out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// Complex Jacobi

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary G = diag(1, e^{-i phi}) * [[c, s], [-s, c]]
// acting on the (p,q) plane, where a(p,q) = |a(p,q)| e^{i phi}.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;

  const Complex phase_conj = std::conj(apq) / mag;  // e^{-i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  double t;
  const double diff = aqq - app;
  if (std::abs(diff) + 1e8 * mag == std::abs(diff)) {
    t = mag / diff;
  } else {
    const double theta = diff / (2.0 * mag);
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t n = a.dim();
  // A <- A G
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * phase_conj * akq;
    a(k, q) = s * akp + c * phase_conj * akq;
  }
  // A <- G^dagger A
  const Complex phase = std::conj(phase_conj);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;

  // V <- V G
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * phase_conj * vkq;
    v(k, q) = s * vkp + c * phase_conj * vkq;
  }
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = kJacobiRelTol * a.frobenius_norm();
  int sweeps = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweeps == kJacobiMaxSweeps) {
      throw NumericalError("Jacobi eigensolver did not converge within " +
                           std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
  }

  std::array<std::size_t, kMaxDim> order{};
  std::iota(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), std::size_t{0});
  std::stable_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.dim = n;
  out.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    Complex gauge = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(v(i, src));
      if (m > kPhaseThreshold) {
        gauge = std::conj(v(i, src)) / m;
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * gauge;
    // The gauge makes the leading component real up to rounding; pin it.
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(out.vectors(i, k)) > kPhaseThreshold) {
        out.vectors(i, k) = Complex(out.vectors(i, k).real(), 0.0);
        break;
      }
    }
  }
  return out;
}

HermitianMatrix matrix_sqrt(const HermitianMatrix& a) {
  const EigenDecomposition e = eigh(a);
  if (e.values[0] < -kPsdTolerance) {
    throw NumericalError("matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(e.values[0]) + ")");
  }
  return e.reconstruct([](double x) { return std::sqrt(std::max(x, 0.0)); });
}

// ---------------------------------------------------------------------------
// Symmetric 3x3: Householder tridiagonalization + implicit QL (tred2/tql2).

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

void tridiagonalize(Mat3& v, Vec3& d, Vec3& e) {
  constexpr int n = 3;
  for (int j = 0; j < n; ++j) d[j] = v[n - 1][j];

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = v[i - 1][j];
        v[i][j] = 0.0;
        v[j][i] = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        v[j][i] = f;
        g = e[j] + v[j][j] * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += v[k][j] * d[k];
          e[k] += v[k][j] * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) v[k][j] -= (f * e[k] + g * d[k]);
        d[j] = v[i - 1][j];
        v[i][j] = 0.0;
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    v[n - 1][i] = v[i][i];
    v[i][i] = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = v[k][i + 1] / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += v[k][i + 1] * v[k][j];
        for (int k = 0; k <= i; ++k) v[k][j] -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) v[k][i + 1] = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = v[n - 1][j];
    v[n - 1][j] = 0.0;
  }
  v[n - 1][n - 1] = 1.0;
  e[0] = 0.0;
}

void implicit_ql(Mat3& v, Vec3& d, Vec3& e) {
  constexpr int n = 3;
  constexpr int kMaxIterations = 60;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::ldexp(1.0, -52);
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iterations = 0;
      do {
        if (++iterations > kMaxIterations) {
          throw NumericalError("symmetric 3x3 QL iteration did not converge");
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int k = 0; k < n; ++k) {
            h = v[k][i + 1];
            v[k][i + 1] = s * v[k][i] + c * h;
            v[k][i] = c * v[k][i] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

DominantEigen max_eig_sym3(const RealSymmetric3& w) {
  Mat3 v = w.entries();
  Vec3 d{};
  Vec3 e{};
  tridiagonalize(v, d, e);
  implicit_ql(v, d, e);

  const double top = *std::max_element(d.begin(), d.end());
  const double tol = 1e-12 * std::max(1.0, std::abs(top));

  // Projector onto the (possibly degenerate) top eigenspace.
  Mat3 proj{};
  for (int k = 0; k < 3; ++k) {
    if (d[k] < top - tol) continue;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) proj[i][j] += v[i][k] * v[j][k];
  }

  DominantEigen out;
  out.value = top;
  for (int k = 0; k < 3; ++k) {
    Vec3 col{proj[0][k], proj[1][k], proj[2][k]};
    const double norm = std::sqrt(col[0] * col[0] + col[1] * col[1] + col[2] * col[2]);
    if (norm <= 1e-6) continue;
    for (double& x : col) x /= norm;
    for (double x : col) {
      if (std::abs(x) > 1e-12) {
        if (x < 0) {
          for (double& y : col) y = -y;
        }
        break;
      }
    }
    out.direction = col;
    return out;
  }
  return out;
}

std::array<double, 3> eigvals_sym3(const RealSymmetric3& w) {
  Mat3 v = w.entries();
  Vec3 d{};
  Vec3 e{};
  tridiagonalize(v, d, e);
  implicit_ql(v, d, e);
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace qcorr
