#include "ratiokit/model_spectra.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ratiokit/error.hpp"

namespace ratiokit {

// --- billiard ---------------------------------------------------------------

Spectrum billiard_levels(const BilliardSpec& spec) {
  if (!(spec.a > 0.0) || !(spec.b > 0.0)) throw ParameterError("billiard sides must be > 0");
  if (spec.max_levels < 1) throw ParameterError("max_levels must be >= 1");
  const double ka = 2.0 * std::numbers::pi / spec.a;
  const double kb = 2.0 * std::numbers::pi / spec.b;
  const double ca = ka * ka;
  const double cb = kb * kb;

  // Weyl estimate for the quarter ellipse: N(E) ~ pi E / (4 sqrt(ca cb)).
  double cutoff = 1.2 * 4.0 * static_cast<double>(spec.max_levels) * std::sqrt(ca * cb) /
                      std::numbers::pi +
                  std::max(ca, cb);
  std::vector<double> levels;
  for (;;) {
    levels.clear();
    for (std::size_t l = 0;; ++l) {
      const double el = (ka * static_cast<double>(l)) * (ka * static_cast<double>(l));
      if (el > cutoff) break;
      for (std::size_t m = 0;; ++m) {
        const double em = (kb * static_cast<double>(m)) * (kb * static_cast<double>(m));
        const double e = el + em;
        if (e > cutoff) break;
        levels.push_back(e);
      }
    }
    if (levels.size() >= spec.max_levels) break;
    cutoff *= 2.0;
  }
  std::sort(levels.begin(), levels.end());
  levels.resize(spec.max_levels);

  Spectrum s;
  s.levels = std::move(levels);
  std::ostringstream os;
  os.precision(17);
  os << "billiard(a=" << spec.a << ",b=" << spec.b << ",levels=" << spec.max_levels << ")";
  s.source = os.str();
  return s;
}

// --- Ising chain --------------------------------------------------------------

namespace {

std::uint32_t rotate(std::uint32_t s, std::size_t length) {
  const std::uint32_t mask = length == 32 ? ~0u : ((1u << length) - 1u);
  return ((s << 1) | (s >> (length - 1))) & mask;
}

struct OrbitInfo {
  std::uint32_t representative;
  std::size_t shift;   // s = T^shift representative
  std::size_t period;
};

OrbitInfo orbit_of(std::uint32_t s, std::size_t length) {
  std::uint32_t best = s;
  std::size_t best_m = 0;
  std::uint32_t t = s;
  std::size_t period = length;
  for (std::size_t m = 1; m < length; ++m) {
    t = rotate(t, length);
    if (t == s) {
      period = m;
      break;
    }
    if (t < best) {
      best = t;
      best_m = m;
    }
  }
  // rep = T^best_m s  =>  s = T^(L - best_m) rep
  return {best, (length - best_m) % length, period};
}

void check_ising(const IsingSpec& spec, std::size_t max_length) {
  if (spec.length < 2) throw ParameterError("Ising chain needs L >= 2");
  if (spec.length > max_length)
    throw ParameterError("Ising chain length " + std::to_string(spec.length) +
                         " exceeds the guard L <= " + std::to_string(max_length));
  if (spec.length > 30) throw ParameterError("Ising chain length must be <= 30");
  if (spec.sector >= spec.length)
    throw ParameterError("momentum sector must lie in [0, L-1]");
}

// Applies H to basis state s and calls emit(target, coefficient) for each
// off-diagonal term; returns the diagonal element.
template <class Emit>
double apply_ising(std::uint32_t s, std::size_t length, double lambda, double alpha,
                   Emit&& emit) {
  const int ones = std::popcount(s);
  const double diag = -lambda * static_cast<double>(static_cast<int>(length) - 2 * ones);
  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t next = (n + 1) % length;
    emit(s ^ ((1u << n) | (1u << next)), -1.0);
    if (alpha != 0.0) emit(s ^ (1u << n), -alpha);
  }
  return diag;
}

}  // namespace

MomentumBasis momentum_basis(std::size_t length, std::size_t sector) {
  if (length < 1 || length > 30) throw ParameterError("chain length must be in [1, 30]");
  if (sector >= length) throw ParameterError("momentum sector must lie in [0, L-1]");
  MomentumBasis basis;
  const std::uint32_t states = 1u << length;
  for (std::uint32_t s = 0; s < states; ++s) {
    const OrbitInfo o = orbit_of(s, length);
    if (o.representative != s) continue;
    if ((sector * o.period) % length != 0) continue;
    basis.representatives.push_back(s);
    basis.periods.push_back(static_cast<std::uint32_t>(o.period));
  }
  return basis;
}

HermitianMatrix ising_sector_hamiltonian(const IsingSpec& spec) {
  check_ising(spec, 30);
  const std::size_t length = spec.length;
  const MomentumBasis basis = momentum_basis(length, spec.sector);
  const std::size_t dim = basis.representatives.size();

  std::vector<std::int32_t> index(std::size_t{1} << length, -1);
  for (std::size_t i = 0; i < dim; ++i)
    index[basis.representatives[i]] = static_cast<std::int32_t>(i);

  const double k = 2.0 * std::numbers::pi * static_cast<double>(spec.sector) /
                   static_cast<double>(length);
  HermitianMatrix h(dim);
  for (std::size_t ia = 0; ia < dim; ++ia) {
    const std::uint32_t a = basis.representatives[ia];
    const double ra = basis.periods[ia];
    const double diag = apply_ising(a, length, spec.lambda, spec.alpha_field,
                                    [&](std::uint32_t target, double c) {
                                      const OrbitInfo o = orbit_of(target, length);
                                      const std::int32_t ib = index[o.representative];
                                      if (ib < 0) return;
                                      const double rb = basis.periods[static_cast<std::size_t>(ib)];
                                      const double phase = k * static_cast<double>(o.shift);
                                      h(static_cast<std::size_t>(ib), ia) +=
                                          c * std::sqrt(ra / rb) *
                                          std::complex<double>(std::cos(phase), std::sin(phase));
                                    });
    h(ia, ia) += diag;
  }
  if (h.hermiticity_defect() > 1e-12)
    throw NumericalError("Ising sector block is not Hermitian to 1e-12");
  return h;
}

HermitianMatrix ising_full_hamiltonian(std::size_t length, double lambda, double alpha_field) {
  if (length < 2 || length > 12) throw ParameterError("full Ising Hamiltonian needs 2 <= L <= 12");
  const std::size_t dim = std::size_t{1} << length;
  HermitianMatrix h(dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    h(s, s) += apply_ising(s, length, lambda, alpha_field,
                           [&](std::uint32_t t, double c) { h(t, s) += c; });
  }
  return h;
}

Spectrum ising_sector_spectrum(const IsingSpec& spec, std::size_t max_length) {
  check_ising(spec, max_length);
  const TridiagonalMatrix t = householder_tridiagonalize(ising_sector_hamiltonian(spec));
  Spectrum s;
  s.levels = eigenvalues_tridiagonal(t).eigenvalues;
  std::ostringstream os;
  os.precision(17);
  os << "ising(L=" << spec.length << ",lambda=" << spec.lambda << ",alpha=" << spec.alpha_field
     << ",sector=" << spec.sector << ")";
  s.source = os.str();
  return s;
}

// --- file ingestion -----------------------------------------------------------

Spectrum parse_spectrum(std::istream& in, const std::string& source) {
  Spectrum s;
  s.source = source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    if (*begin == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
      throw IoError(source + ":" + std::to_string(line_no) + ": cannot parse '" +
                    line.substr(first, last - first + 1) + "' as a real number");
    s.levels.push_back(value);
  }
  if (s.levels.empty()) throw IoError(source + ": no levels found");
  std::sort(s.levels.begin(), s.levels.end());
  for (std::size_t i = 0; i + 1 < s.levels.size(); ++i) {
    const double scale = std::max(std::abs(s.levels[i]), std::abs(s.levels[i + 1]));
    if (s.levels[i + 1] - s.levels[i] <= 1e-13 * scale) ++s.near_duplicates;
  }
  return s;
}

Spectrum ingest_spectrum_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spectrum file '" + path.string() + "'");
  return parse_spectrum(in, path.string());
}

}  // namespace ratiokit
