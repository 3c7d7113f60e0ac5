#include <doctest.h>

#include <ratiokit/analytic_densities.hpp>
#include <ratiokit/comparison.hpp>
#include <ratiokit/ensemble.hpp>
#include <ratiokit/error.hpp>
#include <ratiokit/joint_density.hpp>
#include <ratiokit/parallel.hpp>
#include <ratiokit/pipeline.hpp>
#include <ratiokit/quadrature.hpp>
#include <ratiokit/ratio_statistics.hpp>

#include <cmath>
#include <vector>

using namespace ratiokit;

namespace {

EnsembleSpec hermite(std::size_t n, double beta) {
  EnsembleSpec s;
  s.family = EnsembleFamily::Hermite;
  s.n = n;
  s.beta = beta;
  return s;
}

EnsembleSpec laguerre(std::size_t n, double beta, double alpha = 1.0) {
  EnsembleSpec s;
  s.family = EnsembleFamily::Laguerre;
  s.n = n;
  s.beta = beta;
  s.alpha = alpha;
  return s;
}

EnsembleSpec poisson(double nu) {
  EnsembleSpec s;
  s.family = EnsembleFamily::PoissonFamily;
  s.nu = nu;
  return s;
}

}  // namespace

TEST_SUITE("ensemble_sampler") {

TEST_CASE("invalid specs are parameter errors") {
  auto bad_n = hermite(0, 1.0);
  CHECK_THROWS_AS(sample_hermite_tridiagonal(bad_n, RngStream{1, 0}), ParameterError);
  auto bad_beta = hermite(5, 0.0);
  CHECK_THROWS_AS(sample_hermite_tridiagonal(bad_beta, RngStream{1, 0}), ParameterError);
  auto neg_beta = laguerre(5, -1.0);
  CHECK_THROWS_AS(sample_laguerre_tridiagonal(neg_beta, RngStream{1, 0}), ParameterError);
  auto bad_alpha = laguerre(5, 1.0, 0.0);
  CHECK_THROWS_AS(sample_laguerre_tridiagonal(bad_alpha, RngStream{1, 0}), ParameterError);
  auto bad_nu = poisson(-0.5);
  CHECK_THROWS_AS(sample_poisson_family_levels(bad_nu, 10, RngStream{1, 0}), ParameterError);
  CHECK_THROWS_AS(sample_hermite_tridiagonal(laguerre(4, 1.0), RngStream{1, 0}),
                  ParameterError);
  CHECK_THROWS_AS(sample_ensemble_spectra(hermite(4, 1.0), 0, 1), ParameterError);
}

TEST_CASE("family names round-trip") {
  for (auto f : {EnsembleFamily::Hermite, EnsembleFamily::Laguerre,
                 EnsembleFamily::PoissonFamily})
    CHECK(parse_family(to_string(f)) == f);
  CHECK_THROWS_AS(parse_family("wigner"), ParameterError);
}

TEST_CASE("hermite n=1 has a single diagonal entry and no off-diagonal") {
  const auto m = sample_hermite_tridiagonal(hermite(1, 2.0), RngStream{123, 0});
  CHECK(m.diag.size() == 1);
  CHECK(m.offdiag.empty());
  CHECK(std::isfinite(m.diag[0]));
}

TEST_CASE("hermite matrices are reproducible bit for bit") {
  const auto a = sample_hermite_tridiagonal(hermite(3, 2.0), RngStream{42, 0});
  const auto b = sample_hermite_tridiagonal(hermite(3, 2.0), RngStream{42, 0});
  CHECK(a.diag == b.diag);
  CHECK(a.offdiag == b.offdiag);
  for (double x : a.offdiag) CHECK(x > 0.0);
}

TEST_CASE("hermite squared off-diagonal k has mean beta k / 2 within 3 standard errors") {
  const std::size_t n = 200;
  const auto spec = hermite(n, 1.0);
  const std::size_t samples = 100000;
  std::vector<double> sum(n - 1, 0.0), sum_sq(n - 1, 0.0);
  for (std::size_t t = 0; t < samples; ++t) {
    const auto m = sample_hermite_tridiagonal(spec, RngStream{7, t});
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double v = m.offdiag[i] * m.offdiag[i];
      sum[i] += v;
      sum_sq[i] += v * v;
    }
  }
  std::size_t failures = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double k = static_cast<double>(n - 1 - i);
    const double mean = sum[i] / samples;
    const double var = (sum_sq[i] - samples * mean * mean) / (samples - 1);
    const double se = std::sqrt(var / samples);
    const double expected = spec.beta * k / 2.0;
    if (std::abs(mean - expected) > 3.0 * se) {
      ++failures;
      MESSAGE("k=" << k << " mean " << mean << " expected " << expected << " se " << se);
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("hermite diagonal is standard normal") {
  const auto spec = hermite(20, 2.0);
  double sum = 0, sum_sq = 0;
  const std::size_t samples = 20000;
  for (std::size_t t = 0; t < samples; ++t) {
    const auto m = sample_hermite_tridiagonal(spec, RngStream{8, t});
    for (double d : m.diag) {
      sum += d;
      sum_sq += d * d;
    }
  }
  const double count = samples * 20.0;
  CHECK(std::abs(sum / count) < 4.0 / std::sqrt(count));
  CHECK(sum_sq / count == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("laguerre n=1 is a nonnegative chi-squared with 2 alpha degrees of freedom") {
  for (double alpha : {1.0, 1.5}) {
    const auto spec = laguerre(1, 1.0, alpha);
    double sum = 0;
    const std::size_t samples = 200000;
    for (std::size_t t = 0; t < samples; ++t) {
      const auto m = sample_laguerre_tridiagonal(spec, RngStream{9, t});
      REQUIRE(m.diag.size() == 1);
      REQUIRE(m.offdiag.empty());
      REQUIRE(m.diag[0] >= 0.0);
      sum += m.diag[0];
    }
    CHECK(std::abs(sum / samples - 2.0 * alpha) < 5.0 * std::sqrt(4.0 * alpha / samples));
  }
}

TEST_CASE("laguerre trace has the mean of the bidiagonal chi-squared sum") {
  const std::size_t n = 6;
  const auto spec = laguerre(n, 2.0, 1.0);
  double expected = 0.0;
  for (std::size_t k = 0; k < n; ++k) expected += 2.0 * spec.alpha + spec.beta * k;
  for (std::size_t k = 1; k < n; ++k) expected += spec.beta * k;
  double sum = 0;
  const std::size_t samples = 100000;
  for (std::size_t t = 0; t < samples; ++t) {
    const auto m = sample_laguerre_tridiagonal(spec, RngStream{10, t});
    for (double d : m.diag) sum += d;
  }
  CHECK(sum / samples == doctest::Approx(expected).epsilon(0.005));
}

TEST_CASE("laguerre spectra are nonnegative") {
  const auto spec = laguerre(100, 2.0);
  for (std::uint64_t seed : {3, 4, 5, 6, 7}) {
    const auto r = sample_realization(spec, seed, 0);
    CHECK(r.spectrum.levels.size() == 100);
    CHECK(r.spectrum.is_sorted());
    CHECK(r.spectrum.levels.front() >= 0.0);
  }
  const auto small = laguerre(3, 1.0);
  for (std::uint64_t i = 0; i < 10000; ++i)
    REQUIRE(sample_realization(small, 11, i).spectrum.levels.front() >= 0.0);
}

TEST_CASE("poisson nu=0 spacings have unit mean") {
  const auto s = sample_poisson_family_levels(poisson(0.0), 1000000, RngStream{12, 0});
  REQUIRE(s.levels.size() == 1000000);
  CHECK(s.is_sorted());
  const double mean_spacing = s.levels.back() / s.levels.size();
  CHECK(std::abs(mean_spacing - 1.0) < 0.003);
}

TEST_CASE("poisson nu=1 spacings have variance one half") {
  const auto s = sample_poisson_family_levels(poisson(1.0), 1000000, RngStream{13, 0});
  SampleMoments m;
  double prev = 0.0;
  for (double l : s.levels) {
    m.add(l - prev);
    prev = l;
  }
  CHECK(std::abs(m.mean() - 1.0) < 0.003);
  CHECK(std::abs(m.variance() - 0.5) < 0.005);
}

TEST_CASE("poisson nu=0 with a single level") {
  const auto s = sample_poisson_family_levels(poisson(0.0), 1, RngStream{14, 0});
  REQUIRE(s.levels.size() == 1);
  CHECK(s.levels[0] > 0.0);
}

TEST_CASE("ensemble batches are reproducible and keyed by realization index") {
  const auto spec = hermite(3, 2.0);
  const auto a = sample_ensemble_spectra(spec, 2, 9);
  const auto b = sample_ensemble_spectra(spec, 2, 9);
  REQUIRE(a.size() == 2);
  CHECK(a[0].levels == b[0].levels);
  CHECK(a[1].levels == b[1].levels);
  CHECK(a[0].levels != a[1].levels);
  CHECK(sample_realization(spec, 9, 1).spectrum.levels == a[1].levels);
  CHECK(a[0].seed == std::optional<std::uint64_t>(9));
}

TEST_CASE("hermite n=3 ratios follow the exact 3x3 law (chi-squared goodness of fit)") {
  for (double beta : {1.0, 2.0, 4.0}) {
    StatRequest req;
    req.edges = uniform_edges(0.0, 5.0, 0.05);
    const auto stats = ensemble_statistics(hermite(3, beta), 1000000, 21, req, 1);
    auto mass = [beta](double a, double b) {
      quad::Options opt;
      opt.rel_tol = 1e-12;
      opt.abs_tol = 1e-15;
      return quad::integrate([beta](double r) { return surmise3_ratio(beta, r); }, a, b, opt)
          .value;
    };
    const auto cmp = compare_histogram(stats.histogram, mass);
    INFO("beta " << beta << " chi2 " << cmp.chi2 << " dof " << cmp.chi2_dof);
    CHECK(cmp.chi2_p_value > 1e-3);
    CHECK(cmp.sup_norm < 0.01);
  }
}

TEST_CASE("laguerre n=4 beta=1 ratio density matches the exact marginal") {
  const auto params = make_joint_params(EnsembleFamily::Laguerre, 4, 1.0);
  StatRequest req;
  req.edges = uniform_edges(0.0, 5.0, 0.05);
  const auto stats = ensemble_statistics(laguerre(4, 1.0), 1000000, 22, req,
                                         default_worker_count());
  auto mass = [&](double a, double b) {
    quad::Options opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-12;
    return quad::integrate([&](double r) { return marginal_ratio_density(params, r); }, a, b,
                           opt)
        .value;
  };
  const auto cmp = compare_histogram(stats.histogram, mass);
  MESSAGE("laguerre n=4 sup-norm " << cmp.sup_norm);
  CHECK(cmp.sup_norm < 0.01);
}

TEST_CASE("laguerre n=5 beta=1 mean ratio matches the exact rational") {
  const auto stats = ensemble_statistics(laguerre(5, 1.0), 10000000, 23, StatRequest{},
                                         default_worker_count());
  const double mean = stats.ratio.mean();
  MESSAGE("laguerre n=5 <r> = " << mean);
  CHECK(std::abs(mean - 175271.0 / 52488.0) < 0.01);
}

}  // TEST_SUITE
