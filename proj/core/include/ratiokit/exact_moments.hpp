#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ratiokit {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Monomial f_1^{m_1} ... f_{n-2}^{m_{n-2}} with an exact coefficient.
struct NestedSumTerm {
  std::vector<unsigned> exponents;
  BigInt coefficient;
};

/// J(m) = integral over 0 < g_1 < ... < g_K of prod g_j^{m_j} exp(-sum g_j),
/// evaluated exactly by integrating the largest variable first; each step
/// is a binomial sum of factorials ("nested sums").
Rational ordered_exponential_moment(const std::vector<unsigned>& m);

/// Integral over the ordered cone of prod f^m / (n - 1 + sum f)^(s - 1),
/// up to the common factor 1/Gamma(s - 1):
///   J(m) Gamma(s - n + 1 - |m|) / (n - 1)^(s - n + 1 - |m|).
/// Throws UnsupportedError when s - n + 1 - |m| <= 0.
Rational laguerre_cone_integral(const std::vector<unsigned>& m, long s, std::size_t n);

/// Polynomial part of the Laguerre joint RDS density with integer beta,
/// prod f^beta (1+f)^beta prod (f_k - f_j)^beta, expanded.
std::vector<NestedSumTerm> laguerre_weight_polynomial(std::size_t n, unsigned beta);

/// Same polynomial multiplied by r_j written in RDS variables; the
/// denominator of r_j cancels against one factor of the weight.
std::vector<NestedSumTerm> laguerre_ratio_polynomial(std::size_t n, unsigned beta,
                                                     std::size_t j);

struct ExactMoment {
  Rational value;
  std::string fraction() const;  // "p/q"
  double approx() const;
};

/// Exact <r> (one-point average of the n-2 consecutive ratios) for the
/// beta-Laguerre ensemble with alpha = 1 and integer beta >= 1.
ExactMoment laguerre_mean_ratio_exact(std::size_t n, unsigned beta);

}  // namespace ratiokit
