#include "ratiokit/exact_moments.hpp"

#include <map>

#include "ratiokit/error.hpp"

namespace ratiokit {
namespace {

using Poly = std::map<std::vector<unsigned>, BigInt>;

BigInt factorial(unsigned k) {
  BigInt out = 1;
  for (unsigned i = 2; i <= k; ++i) out *= i;
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    out *= n - k + i;
    out /= i;
  }
  return out;
}

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Poly constant(std::size_t vars, long c) { return Poly{{std::vector<unsigned>(vars, 0), BigInt(c)}}; }

Poly monomial(std::size_t vars, std::size_t index, unsigned power) {
  std::vector<unsigned> e(vars, 0);
  e[index] = power;
  return Poly{{e, BigInt(1)}};
}

// (x_a + sign * x_b)^p with b = npos meaning the constant 1.
Poly binomial_power(std::size_t vars, std::size_t a, std::size_t b, int sign, unsigned p) {
  Poly out;
  for (unsigned k = 0; k <= p; ++k) {
    std::vector<unsigned> e(vars, 0);
    e[a] = k;
    BigInt c = binomial(p, k);
    if (b != static_cast<std::size_t>(-1)) {
      e[b] = p - k;
      if (sign < 0 && (p - k) % 2 == 1) c = -c;
    }
    out[e] += c;
  }
  return out;
}

constexpr std::size_t kOne = static_cast<std::size_t>(-1);

// Weight factors with per-factor exponent overrides.
Poly weight(std::size_t n, unsigned beta, std::size_t reduced_f, std::size_t reduced_gap) {
  const std::size_t m = n - 2;
  Poly out = constant(m, 1);
  for (std::size_t j = 0; j < m; ++j) {
    const unsigned pf = (j == reduced_f) ? beta - 1 : beta;
    out = multiply(out, monomial(m, j, pf));
    out = multiply(out, binomial_power(m, j, kOne, +1, beta));
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j + 1; k < m; ++k) {
      const unsigned pg = (k == reduced_gap && j + 1 == k) ? beta - 1 : beta;
      out = multiply(out, binomial_power(m, k, j, -1, pg));
    }
  return out;
}

std::vector<NestedSumTerm> to_terms(const Poly& p) {
  std::vector<NestedSumTerm> out;
  out.reserve(p.size());
  for (const auto& [e, c] : p) out.push_back({e, c});
  return out;
}

long checked_s(std::size_t n, unsigned beta) {
  const long N = static_cast<long>(n);
  return N + static_cast<long>(beta) * N * (N - 1) / 2;
}

}  // namespace

Rational ordered_exponential_moment(const std::vector<unsigned>& m) {
  if (m.empty()) return Rational(1);
  const std::size_t K = m.size();
  // coefficients a_p of the polynomial in the current variable
  std::vector<Rational> a(m[K - 1] + 1, Rational(0));
  a[m[K - 1]] = 1;
  unsigned c = 1;
  for (std::size_t idx = K - 1; idx > 0; --idx) {
    // integrate current variable over (x, inf) with weight exp(-c g)
    std::vector<Rational> next(a.size(), Rational(0));
    for (std::size_t p = 0; p < a.size(); ++p) {
      if (a[p] == 0) continue;
      for (std::size_t k = 0; k <= p; ++k) {
        BigInt cpow = 1;
        for (std::size_t i = 0; i < p - k + 1; ++i) cpow *= c;
        next[k] += a[p] * Rational(binomial(static_cast<unsigned>(p), static_cast<unsigned>(k)) *
                                       factorial(static_cast<unsigned>(p - k)),
                                   cpow);
      }
    }
    // multiply by x^{m_{idx-1}}
    const unsigned shift = m[idx - 1];
    a.assign(next.size() + shift, Rational(0));
    for (std::size_t p = 0; p < next.size(); ++p) a[p + shift] = next[p];
    ++c;
  }
  Rational total = 0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p] == 0) continue;
    BigInt cpow = 1;
    for (std::size_t i = 0; i < p + 1; ++i) cpow *= c;
    total += a[p] * Rational(factorial(static_cast<unsigned>(p)), cpow);
  }
  return total;
}

Rational laguerre_cone_integral(const std::vector<unsigned>& m, long s, std::size_t n) {
  if (n < 3 || m.size() + 2 != n) throw ParameterError("exponent vector must have length n - 2");
  long total = 0;
  for (unsigned e : m) total += e;
  const long g = s - static_cast<long>(n) + 1 - total;
  if (g <= 0)
    throw UnsupportedError("cone integral diverges: Gamma argument " + std::to_string(g) + " <= 0");
  BigInt denom = 1;
  for (long i = 0; i < g; ++i) denom *= static_cast<long>(n) - 1;
  return ordered_exponential_moment(m) * Rational(factorial(static_cast<unsigned>(g - 1)), denom);
}

std::vector<NestedSumTerm> laguerre_weight_polynomial(std::size_t n, unsigned beta) {
  if (n < 3) throw ParameterError("n must be >= 3");
  if (beta < 1) throw ParameterError("beta must be a positive integer");
  return to_terms(weight(n, beta, kOne, kOne));
}

std::vector<NestedSumTerm> laguerre_ratio_polynomial(std::size_t n, unsigned beta, std::size_t j) {
  if (n < 3) throw ParameterError("n must be >= 3");
  if (beta < 1) throw ParameterError("beta must be a positive integer");
  const std::size_t m = n - 2;
  if (j < 1 || j > m) throw ParameterError("ratio index out of range");
  // 0-based variable indices: f_j is index j-1
  if (j == 1) return to_terms(multiply(weight(n, beta, kOne, kOne), monomial(m, 0, 1)));
  if (j == 2)
    return to_terms(multiply(weight(n, beta, 0, kOne), binomial_power(m, 1, 0, -1, 1)));
  return to_terms(
      multiply(weight(n, beta, kOne, j - 2), binomial_power(m, j - 1, j - 2, -1, 1)));
}

std::string ExactMoment::fraction() const {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

double ExactMoment::approx() const { return value.convert_to<double>(); }

ExactMoment laguerre_mean_ratio_exact(std::size_t n, unsigned beta) {
  if (n < 3) throw ParameterError("n must be >= 3");
  if (beta < 1) throw ParameterError("beta must be a positive integer");
  const long s = checked_s(n, beta);
  auto integrate = [&](const std::vector<NestedSumTerm>& terms) {
    Rational acc = 0;
    for (const auto& t : terms) acc += Rational(t.coefficient) * laguerre_cone_integral(t.exponents, s, n);
    return acc;
  };
  const Rational norm = integrate(laguerre_weight_polynomial(n, beta));
  Rational num = 0;
  for (std::size_t j = 1; j + 2 <= n; ++j) num += integrate(laguerre_ratio_polynomial(n, beta, j));
  return {num / (norm * static_cast<long>(n - 2))};
}

}  // namespace ratiokit
