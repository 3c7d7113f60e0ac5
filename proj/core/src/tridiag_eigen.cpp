#include "ratiokit/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <sstream>

#include "ratiokit/error.hpp"

namespace ratiokit {

double TridiagonalMatrix::norm_bound() const noexcept {
  double bound = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag[i - 1]);
    if (i + 1 < n) row += std::abs(offdiag[i]);
    bound = std::max(bound, row);
  }
  return bound;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fingerprint(const TridiagonalMatrix& m) {
  // FNV-1a over the raw entries; enough to identify a failing matrix in logs.
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](const std::vector<double>& v) {
    for (double x : v) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof bits);
      for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xffU;
        h *= 1099511628211ULL;
      }
    }
  };
  feed(m.diag);
  feed(m.offdiag);
  std::ostringstream os;
  os << "n=" << m.size() << " norm=" << m.norm_bound() << " fnv=" << std::hex << h;
  return os.str();
}

void check_shape(const TridiagonalMatrix& m) {
  if (m.diag.empty()) {
    if (!m.offdiag.empty()) throw ParameterError("tridiagonal matrix: offdiag without diag");
    return;
  }
  if (m.offdiag.size() + 1 != m.diag.size())
    throw ParameterError("tridiagonal matrix: offdiag must have n-1 entries");
}

// Sturm count restricted to rows [begin, end) with squared off-diagonals.
std::size_t count_below(const double* d, const double* e2, std::size_t len, double x,
                        double pivmin) {
  std::size_t count = 0;
  double q = d[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < len; ++i) {
    q = d[i] - x - e2[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

struct Block {
  std::size_t begin;
  std::size_t end;
};

std::vector<Block> split_blocks(const TridiagonalMatrix& m) {
  std::vector<Block> blocks;
  const std::size_t n = m.size();
  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double scale = std::abs(m.diag[i]) + std::abs(m.diag[i + 1]);
    if (m.offdiag[i] == 0.0 || std::abs(m.offdiag[i]) <= kEps * scale * 0.5) {
      blocks.push_back({start, i + 1});
      start = i + 1;
    }
  }
  if (n > 0) blocks.push_back({start, n});
  return blocks;
}

constexpr std::size_t kBisectionStepsPerEigenvalue = 80;

void bisect_block(const double* d, const double* e, const double* e2, std::size_t len,
                  double abs_tol, std::vector<double>& out, std::size_t& iterations) {
  if (len == 1) {
    out.push_back(d[0]);
    return;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double emax2 = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < len) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
    if (i + 1 < len) emax2 = std::max(emax2, e2[i]);
  }
  const double span = std::max(hi - lo, std::abs(hi) + std::abs(lo));
  lo -= 2.0 * kEps * span + 1e-300;
  hi += 2.0 * kEps * span + 1e-300;
  const double pivmin = std::max(std::numeric_limits<double>::min(),
                                 std::numeric_limits<double>::min() * emax2);

  // Interval splitting with shared Sturm counts; each leaf holding one
  // eigenvalue is then refined to the tolerance.
  struct Interval {
    double lo, hi;
    std::size_t below_lo, below_hi;
    std::size_t depth;
  };
  std::vector<Interval> stack{{lo, hi, 0, len, 0}};
  const std::size_t first = out.size();
  out.resize(first + len);
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const std::size_t inside = iv.below_hi - iv.below_lo;
    if (inside == 0) continue;
    const double mid = 0.5 * (iv.lo + iv.hi);
    const double width = iv.hi - iv.lo;
    const bool tiny = width <= std::max(abs_tol, 2.0 * kEps * std::max(std::abs(iv.lo), std::abs(iv.hi)));
    if (tiny || mid <= iv.lo || mid >= iv.hi ||
        iv.depth >= kBisectionStepsPerEigenvalue + 64) {
      for (std::size_t k = iv.below_lo; k < iv.below_hi; ++k) out[first + k] = mid;
      continue;
    }
    const std::size_t c = count_below(d, e2, len, mid, pivmin);
    ++iterations;
    const std::size_t cm = std::clamp(c, iv.below_lo, iv.below_hi);
    if (cm > iv.below_lo) stack.push_back({iv.lo, mid, iv.below_lo, cm, iv.depth + 1});
    if (iv.below_hi > cm) stack.push_back({mid, iv.hi, cm, iv.below_hi, iv.depth + 1});
  }
}

// Implicit QL with Wilkinson-type shift on rows [0, len). e[i] couples i and
// i+1, e[len-1] is scratch.
void ql_block(double* d, double* e, std::size_t len, std::size_t& iterations,
              std::size_t cap, const TridiagonalMatrix& original) {
  if (len < 2) return;
  e[len - 1] = 0.0;
  for (std::size_t l = 0; l < len; ++l) {
    std::size_t m;
    do {
      for (m = l; m + 1 < len; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (++iterations > cap)
          throw NumericalError("implicit QL did not converge (" + fingerprint(original) + ")");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::sqrt(g * g + 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::sqrt(f * f + g * g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::size_t sturm_count(const TridiagonalMatrix& m, double shift) {
  check_shape(m);
  const std::size_t n = m.size();
  if (n == 0) return 0;
  std::vector<double> e2(n > 1 ? n - 1 : 0);
  double emax2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    e2[i] = m.offdiag[i] * m.offdiag[i];
    emax2 = std::max(emax2, e2[i]);
  }
  const double pivmin = std::max(std::numeric_limits<double>::min(),
                                 std::numeric_limits<double>::min() * emax2);
  // Exact zeros in e2 decouple blocks naturally: the recurrence restarts.
  return count_below(m.diag.data(), e2.data(), n, shift, pivmin);
}

EigenResult eigenvalues_tridiagonal(const TridiagonalMatrix& m, double rel_tol,
                                    EigenMethod method) {
  if (!(rel_tol >= 1e-15 && rel_tol <= 1e-6))
    throw ParameterError("eigenvalues_tridiagonal: rel_tol must lie in [1e-15, 1e-6]");
  check_shape(m);
  for (double x : m.diag)
    if (!std::isfinite(x)) throw NumericalError("non-finite diagonal entry (" + fingerprint(m) + ")");
  for (double x : m.offdiag)
    if (!std::isfinite(x)) throw NumericalError("non-finite off-diagonal entry (" + fingerprint(m) + ")");

  EigenResult result;
  const std::size_t n = m.size();
  if (n == 0) return result;
  result.eigenvalues.reserve(n);
  const double abs_tol = rel_tol * m.norm_bound();

  if (method == EigenMethod::Bisection) {
    std::vector<double> e2(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) e2[i] = m.offdiag[i] * m.offdiag[i];
    for (const Block& blk : split_blocks(m)) {
      bisect_block(m.diag.data() + blk.begin, m.offdiag.data() + blk.begin,
                   e2.data() + blk.begin, blk.end - blk.begin, abs_tol, result.eigenvalues,
                   result.iterations);
    }
  } else {
    std::vector<double> d = m.diag;
    std::vector<double> e(n);
    std::copy(m.offdiag.begin(), m.offdiag.end(), e.begin());
    const std::size_t cap = 100 * n;
    for (const Block& blk : split_blocks(m)) {
      ql_block(d.data() + blk.begin, e.data() + blk.begin, blk.end - blk.begin,
               result.iterations, cap, m);
    }
    result.eigenvalues = std::move(d);
  }
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

}  // namespace ratiokit
