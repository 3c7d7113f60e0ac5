#include <cmath>
#include <complex>
#include <vector>

#include "ratiokit/error.hpp"
#include "ratiokit/tridiag_eigen.hpp"

namespace ratiokit {

double HermitianMatrix::hermiticity_defect() const noexcept {
  double scale = 0.0;
  double defect = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      scale = std::max(scale, std::abs((*this)(i, j)));
      defect = std::max(defect, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return scale == 0.0 ? 0.0 : defect / scale;
}

TridiagonalMatrix householder_tridiagonalize(HermitianMatrix a) {
  using cplx = std::complex<double>;
  if (a.hermiticity_defect() > 1e-12)
    throw ParameterError("householder_tridiagonalize: input is not Hermitian to 1e-12");
  const std::size_t n = a.size();
  TridiagonalMatrix t;
  t.diag.resize(n);
  t.offdiag.resize(n > 0 ? n - 1 : 0);
  if (n == 0) return t;

  std::vector<cplx> u(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // length of the column below the diagonal
    double norm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) norm2 += std::norm(a(k + 1 + i, k));
    const double tail2 = norm2 - std::norm(a(k + 1, k));
    if (tail2 <= 1e-300) continue;  // already reduced in this column

    const double norm = std::sqrt(norm2);
    const cplx x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const cplx phase = ax0 == 0.0 ? cplx(1.0) : x0 / ax0;
    const cplx alpha = -phase * norm;

    for (std::size_t i = 0; i < m; ++i) u[i] = a(k + 1 + i, k);
    u[0] -= alpha;
    double unorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) unorm2 += std::norm(u[i]);
    const double inv = 1.0 / std::sqrt(unorm2);
    for (std::size_t i = 0; i < m; ++i) u[i] *= inv;

    // p = A_sub u, K = u^* p, q = p - K u, A_sub -= 2 (u q^* + q u^*)
    for (std::size_t i = 0; i < m; ++i) {
      cplx acc = 0.0;
      const cplx* row = &a(k + 1 + i, k + 1);
      for (std::size_t j = 0; j < m; ++j) acc += row[j] * u[j];
      p[i] = acc;
    }
    cplx kk = 0.0;
    for (std::size_t i = 0; i < m; ++i) kk += std::conj(u[i]) * p[i];
    const double kr = kk.real();
    for (std::size_t i = 0; i < m; ++i) p[i] -= kr * u[i];
    for (std::size_t i = 0; i < m; ++i) {
      cplx* row = &a(k + 1 + i, k + 1);
      const cplx ui = 2.0 * u[i];
      const cplx qi = 2.0 * p[i];
      for (std::size_t j = 0; j < m; ++j) row[j] -= ui * std::conj(p[j]) + qi * std::conj(u[j]);
    }

    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = 1; i < m; ++i) {
      a(k + 1 + i, k) = 0.0;
      a(k, k + 1 + i) = 0.0;
    }
  }

  for (std::size_t i = 0; i < n; ++i) t.diag[i] = a(i, i).real();
  // A diagonal unitary similarity turns each complex off-diagonal into its
  // modulus without touching the diagonal.
  for (std::size_t i = 0; i + 1 < n; ++i) t.offdiag[i] = std::abs(a(i + 1, i));
  return t;
}

}  // namespace ratiokit
