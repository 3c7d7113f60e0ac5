#include "references.hpp"

#include <cmath>

#include "ratiokit/error.hpp"
#include "ratiokit/joint_density.hpp"
#include "ratiokit/quadrature.hpp"

namespace ratiokit::cli {

const char* reference_names() {
  return "poisson-nu-spacing, poisson-nu-ratio, surmise3, hermite4-beta2, wigner, nn3, "
         "poisson-overlap, hermite-overlap-k1, hermite-marginal, laguerre-marginal";
}

OverlapMode parse_overlap_mode(const std::string& name) {
  if (name == "closed") return OverlapMode::ClosedForm;
  if (name == "integral") return OverlapMode::Integral;
  throw ParameterError("unknown mode '" + name + "' (expected closed or integral)");
}

std::function<double(double)> make_reference(const ReferenceSpec& spec) {
  if (spec.model == "hermite-marginal" || spec.model == "laguerre-marginal") {
    const auto family =
        spec.model == "hermite-marginal" ? EnsembleFamily::Hermite : EnsembleFamily::Laguerre;
    const auto params = make_joint_params(family, spec.n, spec.beta);
    return [params](double r) { return r > 0.0 ? marginal_ratio_density(params, r) : 0.0; };
  }
  DensityFamily family;
  try {
    family = parse_density_family(spec.model);
  } catch (const ParameterError&) {
    throw ParameterError("unknown model '" + spec.model + "'; expected one of " + reference_names());
  }
  double parameter = spec.beta;
  switch (family) {
    case DensityFamily::PoissonNuSpacing:
    case DensityFamily::PoissonNuRatio: parameter = spec.nu; break;
    case DensityFamily::PoissonOverlap: parameter = static_cast<double>(spec.k); break;
    default: break;
  }
  const DensityModel model(family, parameter, spec.mode);
  return [model](double x) { return model(x); };
}

double bin_mass(const std::function<double(double)>& density, double a, double b) {
  if (!(b > a)) return 0.0;
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  const auto res = quad::integrate(density, a, b, opt);
  if (!res.converged) throw NumericalError("bin quadrature did not converge");
  return res.value;
}

}  // namespace ratiokit::cli
