#include <doctest.h>

#include <ratiokit/ensemble.hpp>
#include <ratiokit/error.hpp>
#include <ratiokit/ratio_statistics.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <sstream>

using namespace ratiokit;

namespace {

std::vector<double> transformed(const std::vector<double>& v, double scale, double shift) {
  std::vector<double> out(v);
  for (double& x : out) x = scale * x + shift;
  return out;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double rel) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - b[i]) <= rel * std::abs(b[i]));
}

Spectrum hermite_spectrum(std::size_t n, double beta, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.n = n;
  spec.beta = beta;
  return sample_realization(spec, seed, 0).spectrum;
}

}  // namespace

TEST_SUITE("ratio_statistics") {

TEST_CASE("consecutive ratios of small spectra") {
  const std::vector<double> s{0, 1, 3, 7};
  const auto r = consecutive_ratios(s);
  CHECK(r.values == std::vector<double>{2.0, 2.0});
  CHECK(r.kind == RatioKind::Consecutive);
  CHECK(consecutive_ratios(std::vector<double>{0, 1, 2}).values == std::vector<double>{1.0});
  for (double c : {2.0, 1e-6, 1e6}) {
    const auto scaled = consecutive_ratios(transformed(s, c, 0.0));
    check_close(scaled.values, {2.0, 2.0}, 1e-14);
  }
}

TEST_CASE("zero spacing raises a degenerate-spectrum error naming the index") {
  try {
    consecutive_ratios(std::vector<double>{0, 1, 1, 2});
    FAIL("expected DegenerateSpectrumError");
  } catch (const DegenerateSpectrumError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(consecutive_ratios(std::vector<double>{0, 1}), ParameterError);
}

TEST_CASE("tilde ratios") {
  RatioSeries r{{2.0, 0.5}, RatioKind::Consecutive, 0};
  CHECK(tilde_ratios(r).values == std::vector<double>{0.5, 0.5});
  CHECK(tilde_ratios(RatioSeries{{1.0}, RatioKind::Consecutive, 0}).values ==
        std::vector<double>{1.0});
  CHECK(tilde_ratios(r).kind == RatioKind::Tilde);
  CHECK_THROWS_AS(tilde_ratios(tilde_ratios(r)), ParameterError);
}

TEST_CASE("poisson tilde mean is 2 ln 2 - 1") {
  EnsembleSpec spec;
  spec.family = EnsembleFamily::PoissonFamily;
  spec.nu = 0.0;
  const auto s = sample_poisson_family_levels(spec, 1000000, RngStream{51, 0});
  const auto t = tilde_ratios(consecutive_ratios(s));
  SampleMoments m;
  for (double v : t.values) {
    REQUIRE(v <= 1.0);
    m.add(v);
  }
  CHECK(std::abs(m.mean() - (2.0 * std::log(2.0) - 1.0)) < 0.002);
}

TEST_CASE("overlapping ratios") {
  const auto r = overlapping_ratios(std::vector<double>{0, 1, 2, 4}, 1);
  CHECK(r.values == std::vector<double>{1.5});
  CHECK(r.kind == RatioKind::Overlapping);
  CHECK(r.k == 1);
  std::vector<double> equal(20);
  for (std::size_t i = 0; i < equal.size(); ++i) equal[i] = 3.0 * i - 7.0;
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto o = overlapping_ratios(equal, k);
    CHECK(o.values.size() == equal.size() - k - 2);
    for (double v : o.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(overlapping_ratios(std::vector<double>{0, 1, 2}, 1), ParameterError);
  CHECK_THROWS_AS(overlapping_ratios(equal, 0), ParameterError);
}

TEST_CASE("overlapping ratios with k shared spacings follow the definition") {
  const auto s = hermite_spectrum(12, 1.0, 52);
  const auto& l = s.levels;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto o = overlapping_ratios(s, k);
    for (std::size_t n = 1; n + k + 1 < l.size(); ++n)
      CHECK(o.values[n - 1] == (l[n + k + 1] - l[n]) / (l[n + k] - l[n - 1]));
  }
}

TEST_CASE("relative disjoint spacings") {
  CHECK(rds_vector(std::vector<double>{0, 1, 3, 7}).f == std::vector<double>{2.0, 6.0});
  CHECK(rds_vector(std::vector<double>{0, 1, 2, 3, 4}).f == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_THROWS_AS(rds_vector(std::vector<double>{1, 1, 3}), DegenerateSpectrumError);
}

TEST_CASE("quotient and cumulative-product routes to f agree") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto s = hermite_spectrum(6, 1.0 + seed % 3, 53 + seed);
    const auto direct = rds_vector(s);
    const auto from_ratios = rds_from_ratios(consecutive_ratios(s).values);
    check_close(from_ratios.f, direct.f, 1e-12);
    check_close(ratios_from_rds(direct), consecutive_ratios(s).values, 1e-12);
  }
}

TEST_CASE("translation and scale invariance of every ratio observable") {
  const auto s = hermite_spectrum(40, 2.0, 54);
  const auto r = consecutive_ratios(s).values;
  const auto t = tilde_ratios(consecutive_ratios(s)).values;
  const auto o2 = overlapping_ratios(s, 2).values;
  const auto f = rds_vector(s).f;
  for (double c : {2.0, 1e-6, 1e6}) {
    for (double shift : {0.0, 3.0, -11.5}) {
      Spectrum moved = s;
      moved.levels = transformed(s.levels, c, shift * c);
      INFO("scale " << c << " shift " << shift);
      check_close(consecutive_ratios(moved).values, r, 1e-10);
      check_close(tilde_ratios(consecutive_ratios(moved)).values, t, 1e-10);
      check_close(overlapping_ratios(moved, 2).values, o2, 1e-10);
      check_close(rds_vector(moved).f, f, 1e-10);
    }
  }
  for (double c : {2.0, 0.5}) {
    Spectrum scaled = s;
    scaled.levels = transformed(s.levels, c, 0.0);
    CHECK(consecutive_ratios(scaled).values == r);
  }
}

TEST_CASE("histogram bin convention and validation") {
  const auto h = histogram(std::vector<double>{0.5, 1.5}, {0.0, 1.0, 2.0});
  CHECK(h.counts == std::vector<std::uint64_t>{1, 1});
  CHECK(h.total == 2);
  const auto edge = histogram(std::vector<double>{1.0}, {0.0, 1.0, 2.0});
  CHECK(edge.counts == std::vector<std::uint64_t>{0, 1});
  const auto out = histogram(std::vector<double>{-1.0, 2.0, 7.0, 0.0}, {0.0, 1.0, 2.0});
  CHECK(out.counts == std::vector<std::uint64_t>{1, 0});
  CHECK(out.underflow == 1);
  CHECK(out.overflow == 2);
  CHECK(out.total == 4);
  CHECK_THROWS_AS(Histogram({0.0, 2.0, 1.0}), ParameterError);
  CHECK_THROWS_AS(Histogram({0.0}), ParameterError);
  CHECK_THROWS_AS(Histogram({0.0, 0.0}), ParameterError);
}

TEST_CASE("histogram merge is exact, commutative and associative") {
  const std::vector<double> edges{0.0, 0.5, 1.0, 3.0};
  const auto a = histogram(std::vector<double>{0.1, 0.7, 2.0, 9.0}, edges);
  const auto b = histogram(std::vector<double>{0.2, 0.2, -1.0}, edges);
  const auto c = histogram(std::vector<double>{2.9, 0.5}, edges);
  Histogram empty(edges);
  auto a_empty = a;
  a_empty.merge(empty);
  CHECK(a_empty == a);
  auto ab = a;
  ab.merge(b);
  auto ba = b;
  ba.merge(a);
  CHECK(ab == ba);
  auto ab_c = ab;
  ab_c.merge(c);
  auto bc = b;
  bc.merge(c);
  auto a_bc = a;
  a_bc.merge(bc);
  CHECK(ab_c == a_bc);
  CHECK(ab_c.total == 9);
  CHECK_THROWS_AS(a_empty.merge(Histogram({0.0, 1.0})), ParameterError);
}

TEST_CASE("uniform edges and normalization") {
  const auto edges = default_ratio_edges();
  CHECK(edges.size() == 101);
  CHECK(edges.front() == 0.0);
  CHECK(edges.back() == 5.0);
  CHECK(edges[1] == doctest::Approx(0.05));
  CHECK_THROWS_AS(uniform_edges(0.0, 1.0, 0.3), ParameterError);
  const auto h = histogram(std::vector<double>{0.1, 0.2, 0.6, 5.0}, uniform_edges(0.0, 1.0, 0.5));
  const auto rows = normalize(h);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].density == doctest::Approx(2.0 / (4 * 0.5)));
  CHECK(rows[1].density == doctest::Approx(1.0 / (4 * 0.5)));
  std::ostringstream csv;
  write_histogram_csv(csv, h);
  CHECK(csv.str().rfind("bin_left,bin_right,count,density\n", 0) == 0);
}

TEST_CASE("sample moments") {
  SampleMoments m;
  for (double x : {1.0, 2.0, 3.0, 4.0}) m.add(x);
  CHECK(m.mean() == 2.5);
  CHECK(m.variance() == doctest::Approx(5.0 / 3.0));
  CHECK(m.standard_error() == doctest::Approx(std::sqrt(5.0 / 12.0)));
}

TEST_CASE("hermite ratios and their inverses have the same law") {
  // Middle ratio of n = 9 is self-dual; even and odd realizations give two
  // independent samples, compared by a chi-squared homogeneity test.
  EnsembleSpec spec;
  spec.n = 9;
  spec.beta = 1.0;
  const auto edges = uniform_edges(0.0, 5.0, 0.25);
  Histogram direct(edges), inverse(edges);
  for (std::uint64_t i = 0; i < 200000; ++i) {
    const auto s = sample_realization(spec, 55, i).spectrum;
    const double r = consecutive_ratios(s).values[3];
    if (i % 2 == 0)
      direct.add(r);
    else
      inverse.add(1.0 / r);
  }
  std::vector<double> a(direct.counts.begin(), direct.counts.end());
  std::vector<double> b(inverse.counts.begin(), inverse.counts.end());
  a.push_back(static_cast<double>(direct.overflow));
  b.push_back(static_cast<double>(inverse.overflow));
  const double na = static_cast<double>(direct.total);
  const double nb = static_cast<double>(inverse.total);
  double chi2 = 0.0;
  std::size_t cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double sum = a[i] + b[i];
    if (sum == 0.0) continue;
    const double ea = sum * na / (na + nb);
    const double eb = sum * nb / (na + nb);
    chi2 += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    ++cells;
  }
  const double p = boost::math::gamma_q(0.5 * (cells - 1), 0.5 * chi2);
  MESSAGE("duality chi2 " << chi2 << " on " << cells - 1 << " dof, p = " << p);
  CHECK(p > 1e-3);
}

}  // TEST_SUITE
