#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ratiokit {

/// Real symmetric tridiagonal matrix stored as its diagonal and the n-1
/// off-diagonal entries.
struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const noexcept { return diag.size(); }
  /// Gershgorin bound on the spectral radius.
  double norm_bound() const noexcept;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  std::size_t iterations = 0;
};

enum class EigenMethod {
  Bisection,   // Sturm-sequence bisection, every eigenvalue independently
  ImplicitQL,  // root-free QL with Wilkinson-type shift
};

inline constexpr double kDefaultEigenRelTol = 1e-12;

/// All eigenvalues of `m`, ascending. Each value lies within
/// rel_tol * ||m|| of a true eigenvalue (||m|| the Gershgorin bound).
/// Zero off-diagonals split the problem into independent blocks.
/// Throws ParameterError for rel_tol outside [1e-15, 1e-6] and
/// NumericalError (with a matrix fingerprint) on non-convergence.
EigenResult eigenvalues_tridiagonal(const TridiagonalMatrix& m,
                                    double rel_tol = kDefaultEigenRelTol,
                                    EigenMethod method = EigenMethod::Bisection);

/// Number of eigenvalues strictly below `shift` (Sturm sign changes).
std::size_t sturm_count(const TridiagonalMatrix& m, double shift);

/// Dense complex Hermitian matrix, row-major.
class HermitianMatrix {
 public:
  using value_type = std::complex<double>;

  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  std::span<const value_type> data() const noexcept { return data_; }

  /// max |h_ij - conj(h_ji)| relative to max |h_ij| (0 for the zero matrix).
  double hermiticity_defect() const noexcept;

 private:
  std::size_t n_ = 0;
  std::vector<value_type> data_;
};

/// Householder reduction of a Hermitian matrix to a unitarily similar real
/// symmetric tridiagonal one (complex off-diagonal phases are rotated away).
/// Throws ParameterError when the input is not Hermitian to 1e-12 relative.
TridiagonalMatrix householder_tridiagonalize(HermitianMatrix h);

}  // namespace ratiokit
