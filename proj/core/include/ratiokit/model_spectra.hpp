#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>

#include "ratiokit/spectrum.hpp"
#include "ratiokit/tridiag_eigen.hpp"

namespace ratiokit {

/// Free particle in an a x b rectangle with periodic boundaries; levels
/// (2 pi l / a)^2 + (2 pi m / b)^2 for l, m = 0, 1, 2, ...
/// a^4/b^4 should be irrational for Poisson statistics (not checked).
struct BilliardSpec {
  double a = 1.0;
  double b = 1.0;
  std::size_t max_levels = 1;
};

/// Lowest `max_levels` billiard levels, sorted, with every level below the
/// last returned one present (cutoff grows until the count is reached).
Spectrum billiard_levels(const BilliardSpec& spec);

/// Periodic Ising chain H = -sum_n (sx_n sx_{n+1} + lambda sz_n + alpha sx_n)
/// restricted to the momentum sector where the translation operator has
/// eigenvalue exp(2 pi i sector / L).
struct IsingSpec {
  std::size_t length = 4;
  double lambda = 1.0;
  double alpha_field = 0.0;
  std::size_t sector = 0;
};

inline constexpr std::size_t kIsingMaxLength = 16;

struct MomentumBasis {
  std::vector<std::uint32_t> representatives;  // smallest rotation of each orbit
  std::vector<std::uint32_t> periods;          // orbit sizes
};

/// Orbit representatives compatible with momentum `sector` (L | sector * R).
MomentumBasis momentum_basis(std::size_t length, std::size_t sector);

/// Hamiltonian block in the momentum basis. Validates Hermiticity to 1e-12.
HermitianMatrix ising_sector_hamiltonian(const IsingSpec& spec);

/// Full 2^L x 2^L Hamiltonian in the sigma^z product basis (small L only).
HermitianMatrix ising_full_hamiltonian(std::size_t length, double lambda,
                                       double alpha_field);

/// Sorted eigenvalues of one momentum block. `max_length` is the desk-scale
/// guard on L.
Spectrum ising_sector_spectrum(const IsingSpec& spec,
                               std::size_t max_length = kIsingMaxLength);

/// Plain-text spectrum: one real per line, '#' comment lines and blank lines
/// skipped. Levels are sorted; near-duplicates (1e-13 relative) are counted
/// in Spectrum::near_duplicates. Throws IoError on unreadable or empty input
/// and on unparseable lines (message names the line number).
Spectrum ingest_spectrum_file(const std::filesystem::path& path);
Spectrum parse_spectrum(std::istream& in, const std::string& source);

}  // namespace ratiokit
