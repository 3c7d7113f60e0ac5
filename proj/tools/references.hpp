#pragma once

#include <functional>
#include <string>

#include "ratiokit/analytic_densities.hpp"

namespace ratiokit::cli {

/// A named density plus the parameters it was built from.
struct ReferenceSpec {
  std::string model;
  double beta = 1.0;
  double nu = 0.0;
  std::size_t k = 1;
  std::size_t n = 4;
  OverlapMode mode = OverlapMode::ClosedForm;
};

/// Names accepted by --model / --reference.
const char* reference_names();

/// Pointwise density for any analytic family or a marginal of the joint
/// density ("hermite-marginal", "laguerre-marginal", using `n` and `beta`).
std::function<double(double)> make_reference(const ReferenceSpec& spec);

/// Probability of [a, b) under `density` by adaptive quadrature.
double bin_mass(const std::function<double(double)>& density, double a, double b);

OverlapMode parse_overlap_mode(const std::string& name);

}  // namespace ratiokit::cli
