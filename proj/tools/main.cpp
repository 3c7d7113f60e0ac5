#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ratiokit/comparison.hpp"
#include "ratiokit/ensemble.hpp"
#include "ratiokit/error.hpp"
#include "ratiokit/model_spectra.hpp"
#include "ratiokit/parallel.hpp"
#include "ratiokit/pipeline.hpp"
#include "references.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ratiokit;

constexpr int kExitParameter = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;

struct Grid {
  double lo = 0.0;
  double hi = 5.0;
  double step = 0.05;
};

Grid parse_grid(const std::string& text) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof())
    throw ParameterError("grid must look like lo:hi:step, got '" + text + "'");
  if (!(g.step > 0.0) || !(g.hi >= g.lo)) throw ParameterError("grid needs hi >= lo and step > 0");
  return g;
}

/// Writes to a file, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close(const std::string& path) {
    if (file_) {
      file_->close();
      if (!*file_) throw IoError("failed writing '" + path + "'");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_header(std::ostream& out, const json& config) {
  out << "# ratiokit " << RATIOKIT_VERSION_STRING << '\n';
  out << "# config " << config.dump() << '\n';
}

void emit_summary(const std::string& summary_path, const std::string& out_path, json summary,
                  const json& config) {
  summary["version"] = RATIOKIT_VERSION_STRING;
  summary["config"] = config;
  const std::string text = summary.dump(2) + "\n";
  if (!summary_path.empty()) {
    Output o(summary_path);
    o.stream() << text;
    o.close(summary_path);
  } else if (out_path != "-") {
    std::cout << text;
  } else {
    std::cerr << text;
  }
}

// --- shared option groups -----------------------------------------------------

struct StatOptions {
  std::string stat = "ratio";
  std::size_t k = 1;
  std::string bins = "0:5:0.05";
  std::string out = "-";
  std::string summary;

  void attach(CLI::App* app) {
    app->add_option("--stat", stat, "ratio, tilde or overlap")->capture_default_str();
    app->add_option("--k", k, "shared spacings for --stat overlap")->capture_default_str();
    app->add_option("--bins", bins, "histogram grid lo:hi:width")->capture_default_str();
    app->add_option("--out", out, "CSV output path, - for stdout")->capture_default_str();
    app->add_option("--summary", summary, "JSON summary path");
  }

  StatRequest request() const {
    StatRequest req;
    req.kind = parse_stat(stat);
    if (req.kind == StatKind::Overlap && k < 1) throw ParameterError("--k must be >= 1");
    req.k = k;
    const Grid g = parse_grid(bins);
    req.edges = uniform_edges(g.lo, g.hi, g.step);
    return req;
  }

  void describe(json& config) const {
    config["stat"] = stat;
    if (parse_stat(stat) == StatKind::Overlap) config["k"] = k;
    config["bins"] = bins;
  }
};

struct ReferenceOptions {
  std::string model;
  double beta = 1.0;
  double nu = 0.0;
  std::size_t k = 1;
  std::size_t n = 4;
  std::string mode = "closed";

  void attach(CLI::App* app, bool required) {
    auto* opt = app->add_option("--reference", model, std::string("reference density: ") +
                                                          cli::reference_names() +
                                                          (required ? ", or split" : ""));
    if (required) opt->required();
    app->add_option("--ref-beta", beta, "beta of the reference")->capture_default_str();
    app->add_option("--ref-nu", nu, "nu of the reference")->capture_default_str();
    app->add_option("--ref-k", k, "k of the reference")->capture_default_str();
    app->add_option("--ref-n", n, "matrix size of a marginal reference")->capture_default_str();
    app->add_option("--ref-mode", mode, "closed or integral")->capture_default_str();
  }

  cli::ReferenceSpec spec() const {
    return {model, beta, nu, k, n, cli::parse_overlap_mode(mode)};
  }

  void describe(json& config) const {
    config["reference"] = {{"model", model}, {"beta", beta}, {"nu", nu},
                           {"k", k},         {"n", n},       {"mode", mode}};
  }
};

json moments_summary(const SpectrumStatistics& s) {
  json j;
  j["spectra"] = s.spectra;
  j["ratios"] = s.ratio.count;
  j["mean_r"] = s.ratio.mean();
  j["mean_r_stderr"] = s.ratio.standard_error();
  j["mean_tilde"] = s.tilde.mean();
  j["mean_tilde_stderr"] = s.tilde.standard_error();
  j["histogram_total"] = s.histogram.total;
  j["underflow"] = s.histogram.underflow;
  j["overflow"] = s.histogram.overflow;
  j["resamples"] = s.resamples;
  return j;
}

json comparison_summary(const ComparisonResult& c) {
  return {{"sup_norm", c.sup_norm},       {"chi2", c.chi2},
          {"chi2_dof", c.chi2_dof},       {"chi2_p_value", c.chi2_p_value},
          {"ks_statistic", c.ks_statistic}, {"ks_p_value", c.ks_p_value}};
}

ComparisonResult compare_against(const Histogram& h, const cli::ReferenceSpec& ref) {
  const auto density = cli::make_reference(ref);
  return compare_histogram(h, [&](double a, double b) { return cli::bin_mass(density, a, b); });
}

// --- sample / compare -----------------------------------------------------------

struct SampleOptions {
  std::string family = "hermite";
  std::size_t n = 1000;
  double beta = 1.0;
  double alpha = 1.0;
  double nu = 0.0;
  std::optional<std::size_t> levels;
  std::optional<std::size_t> realizations;
  std::uint64_t seed = 1;
  std::string method = "ql";

  void attach(CLI::App* app) {
    app->add_option("--family", family, "hermite, laguerre or poisson")->capture_default_str();
    app->add_option("--n", n, "matrix size")->capture_default_str();
    app->add_option("--beta", beta, "Dyson index")->capture_default_str();
    app->add_option("--alpha", alpha, "Laguerre exponent")->capture_default_str();
    app->add_option("--nu", nu, "Poisson-family repulsion exponent")->capture_default_str();
    app->add_option("--levels", levels, "levels per Poisson-family spectrum (overrides --n)");
    app->add_option("--realizations", realizations,
                    "number of spectra (default 10000, or 1 for poisson)");
    app->add_option("--seed", seed, "base seed")->capture_default_str();
    app->add_option("--method", method, "eigensolver: ql or bisection")->capture_default_str();
  }

  EnsembleSpec spec() const {
    EnsembleSpec s;
    s.family = parse_family(family);
    s.n = (s.family == EnsembleFamily::PoissonFamily && levels) ? *levels : n;
    s.beta = beta;
    s.alpha = alpha;
    s.nu = nu;
    s.validate();
    return s;
  }

  std::size_t count() const {
    if (realizations) return *realizations;
    return parse_family(family) == EnsembleFamily::PoissonFamily ? 1 : 10000;
  }

  SamplerOptions sampler() const {
    SamplerOptions o;
    if (method == "ql") {
      o.method = EigenMethod::ImplicitQL;
    } else if (method == "bisection") {
      o.method = EigenMethod::Bisection;
    } else {
      throw ParameterError("unknown --method '" + method + "'");
    }
    return o;
  }

  json describe() const {
    const auto s = spec();
    json j;
    j["family"] = to_string(s.family);
    j["n"] = s.n;
    if (s.family == EnsembleFamily::PoissonFamily) {
      j["nu"] = s.nu;
    } else {
      j["beta"] = s.beta;
      if (s.family == EnsembleFamily::Laguerre) j["alpha"] = s.alpha;
      j["method"] = method;
    }
    j["realizations"] = count();
    j["seed"] = seed;
    return j;
  }
};

int run_sample(const SampleOptions& so, const StatOptions& st, std::size_t workers) {
  const auto req = st.request();
  json config = so.describe();
  config["command"] = "sample";
  st.describe(config);
  const auto stats = ensemble_statistics(so.spec(), so.count(), so.seed, req, workers, so.sampler());
  Output out(st.out);
  write_header(out.stream(), config);
  write_histogram_csv(out.stream(), stats.histogram);
  out.close(st.out);
  emit_summary(st.summary, st.out, moments_summary(stats), config);
  return 0;
}

// Two-sample null test: even versus odd realizations of the same run.
json split_comparison(const SampleOptions& so, const StatRequest& req, std::size_t workers) {
  struct Halves {
    std::vector<double> even, odd;
  };
  const auto spec = so.spec();
  const auto sampler = so.sampler();
  const Halves h = deterministic_reduce(
      so.count(), 64, workers, [] { return Halves{}; },
      [&](Halves& acc, std::size_t i) {
        const auto real = sample_realization(spec, so.seed, i, sampler);
        auto values = statistic_values(real.spectrum, req);
        auto& dst = (i % 2 == 0) ? acc.even : acc.odd;
        dst.insert(dst.end(), values.begin(), values.end());
      },
      [](Halves& into, Halves&& b) {
        into.even.insert(into.even.end(), b.even.begin(), b.even.end());
        into.odd.insert(into.odd.end(), b.odd.begin(), b.odd.end());
      });
  if (h.even.empty() || h.odd.empty()) throw ParameterError("split comparison needs >= 2 realizations");
  const auto ks = ks_two_sample(h.even, h.odd);
  return {{"ks_statistic", ks.statistic}, {"ks_p_value", ks.p_value},
          {"even_values", h.even.size()}, {"odd_values", h.odd.size()}};
}

int run_compare(const SampleOptions& so, const StatOptions& st, const ReferenceOptions& ro,
                std::size_t workers) {
  const auto req = st.request();
  json config = so.describe();
  config["command"] = "compare";
  st.describe(config);
  if (ro.model == "split") {
    config["reference"] = "split";
    const json summary = split_comparison(so, req, workers);
    Output out(st.out);
    write_header(out.stream(), config);
    out.stream() << "statistic,value\n";
    out.stream().precision(17);
    out.stream() << "ks_statistic," << summary["ks_statistic"].get<double>() << '\n';
    out.stream() << "ks_p_value," << summary["ks_p_value"].get<double>() << '\n';
    out.close(st.out);
    emit_summary(st.summary, st.out, summary, config);
    return 0;
  }
  ro.describe(config);
  const auto ref = ro.spec();
  cli::make_reference(ref);  // validate before the expensive sampling
  const auto stats = ensemble_statistics(so.spec(), so.count(), so.seed, req, workers, so.sampler());
  const auto cmp = compare_against(stats.histogram, ref);
  Output out(st.out);
  write_header(out.stream(), config);
  write_residual_csv(out.stream(), cmp);
  out.close(st.out);
  json summary = moments_summary(stats);
  summary["comparison"] = comparison_summary(cmp);
  emit_summary(st.summary, st.out, summary, config);
  return 0;
}

// --- density ----------------------------------------------------------------------

struct DensityOptions {
  std::string model;
  double beta = 1.0;
  double nu = 0.0;
  std::size_t k = 1;
  std::size_t n = 4;
  std::string grid = "0:5:0.05";
  std::string mode = "closed";
  std::string out = "-";

  void attach(CLI::App* app) {
    app->add_option("--model", model, std::string("one of ") + cli::reference_names())->required();
    app->add_option("--beta", beta, "Dyson index")->capture_default_str();
    app->add_option("--nu", nu, "Poisson-family exponent")->capture_default_str();
    app->add_option("--k", k, "overlap order")->capture_default_str();
    app->add_option("--n", n, "matrix size for marginals")->capture_default_str();
    app->add_option("--grid", grid, "lo:hi:step, inclusive")->capture_default_str();
    app->add_option("--mode", mode, "closed, integral or both (hermite-overlap-k1)")
        ->capture_default_str();
    app->add_option("--out", out, "CSV output path, - for stdout")->capture_default_str();
  }
};

int run_density(const DensityOptions& d) {
  const Grid g = parse_grid(d.grid);
  const bool both = d.mode == "both";
  if (both && d.model != "hermite-overlap-k1")
    throw ParameterError("--mode both applies to hermite-overlap-k1 only");
  cli::ReferenceSpec spec{d.model, d.beta, d.nu, d.k, d.n,
                          both ? OverlapMode::ClosedForm : cli::parse_overlap_mode(d.mode)};
  const auto primary = cli::make_reference(spec);
  std::function<double(double)> secondary;
  if (both) {
    spec.mode = OverlapMode::Integral;
    secondary = cli::make_reference(spec);
  }

  json config{{"command", "density"}, {"model", d.model}, {"beta", d.beta}, {"nu", d.nu},
              {"k", d.k},             {"n", d.n},         {"grid", d.grid}, {"mode", d.mode}};
  Output out(d.out);
  auto& os = out.stream();
  write_header(os, config);
  os.precision(17);
  os << (both ? "r,closed,integral\n" : "r,density\n");
  const auto steps = static_cast<std::size_t>(std::floor((g.hi - g.lo) / g.step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double r = g.lo + static_cast<double>(i) * g.step;
    os << r << ',' << primary(r);
    if (both) os << ',' << secondary(r);
    os << '\n';
  }
  out.close(d.out);
  return 0;
}

// --- model ------------------------------------------------------------------------

struct ModelOptions {
  double a = 0.0, b = 0.0;
  double a_pow4 = 2.0, b_pow4 = 5.0;
  std::size_t levels = 100000;
  std::size_t length = 14;
  double lambda = 1.0;
  double alpha = 0.01;
  std::size_t sector = 0;
  std::size_t stride = 1;
  std::size_t offset = 0;
  std::string half;
  std::string path;
  std::string residuals;
};

Spectrum apply_selection(Spectrum s, const ModelOptions& m, json& config) {
  if (!m.half.empty()) {
    if (m.half != "lower" && m.half != "upper") throw ParameterError("--half must be lower or upper");
    s = half_of(s, m.half == "lower" ? SpectrumHalf::Lower : SpectrumHalf::Upper);
    config["half"] = m.half;
  }
  if (m.stride != 1 || m.offset != 0) {
    if (m.stride < 1) throw ParameterError("--decimate must be >= 1");
    s = decimate(s, m.stride, m.offset);
    config["decimate"] = m.stride;
    config["decimate_offset"] = m.offset;
  }
  return s;
}

int run_model(const std::string& which, const ModelOptions& m, const StatOptions& st,
              const ReferenceOptions& ro) {
  const auto req = st.request();
  json config{{"command", "model"}, {"model", which}};
  Spectrum s;
  if (which == "billiard") {
    BilliardSpec spec;
    spec.a = m.a > 0.0 ? m.a : std::pow(m.a_pow4, 0.25);
    spec.b = m.b > 0.0 ? m.b : std::pow(m.b_pow4, 0.25);
    if (!(spec.a > 0.0) || !(spec.b > 0.0)) throw ParameterError("billiard sides must be > 0");
    spec.max_levels = m.levels;
    config["a"] = spec.a;
    config["b"] = spec.b;
    config["levels"] = m.levels;
    s = billiard_levels(spec);
  } else if (which == "ising") {
    IsingSpec spec{m.length, m.lambda, m.alpha, m.sector};
    config["L"] = m.length;
    config["lambda"] = m.lambda;
    config["alpha"] = m.alpha;
    config["sector"] = m.sector;
    s = ising_sector_spectrum(spec);
  } else {
    config["path"] = m.path;
    s = ingest_spectrum_file(m.path);
  }
  s = apply_selection(std::move(s), m, config);
  st.describe(config);
  if (!ro.model.empty()) ro.describe(config);

  const auto stats = spectrum_statistics(s, req);
  Output out(st.out);
  write_header(out.stream(), config);
  write_histogram_csv(out.stream(), stats.histogram);
  out.close(st.out);

  json summary = moments_summary(stats);
  summary["levels"] = s.size();
  summary["near_duplicates"] = s.near_duplicates;
  if (!ro.model.empty()) {
    const auto cmp = compare_against(stats.histogram, ro.spec());
    summary["comparison"] = comparison_summary(cmp);
    if (!m.residuals.empty()) {
      Output res(m.residuals);
      write_header(res.stream(), config);
      write_residual_csv(res.stream(), cmp);
      res.close(m.residuals);
    }
  }
  emit_summary(st.summary, st.out, summary, config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ratiokit: spacing-ratio statistics of random-matrix ensembles and model spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("ratiokit ") + RATIOKIT_VERSION_STRING);
  std::size_t workers = 0;
  app.add_option("--workers", workers,
                 "worker threads (default: RATIOKIT_WORKERS or hardware concurrency)");
  app.fallthrough();

  SampleOptions sample_opts;
  StatOptions sample_stats;
  auto* sample = app.add_subcommand("sample", "sample an ensemble and histogram a ratio statistic");
  sample_opts.attach(sample);
  sample_stats.attach(sample);

  SampleOptions compare_opts;
  StatOptions compare_stats;
  ReferenceOptions compare_ref;
  auto* compare = app.add_subcommand("compare", "compare a sampled histogram with a reference density");
  compare_opts.attach(compare);
  compare_stats.attach(compare);
  compare_ref.attach(compare, true);

  DensityOptions density_opts;
  auto* density = app.add_subcommand("density", "tabulate a reference density on a grid");
  density_opts.attach(density);

  ModelOptions model_opts;
  StatOptions model_stats;
  ReferenceOptions model_ref;
  auto* model = app.add_subcommand("model", "statistics of billiard, Ising or file spectra");
  model->require_subcommand(1);
  model->fallthrough();
  auto* billiard = model->add_subcommand("billiard", "rectangular billiard levels");
  billiard->add_option("--a", model_opts.a, "side a (overrides --a-pow4)");
  billiard->add_option("--b", model_opts.b, "side b (overrides --b-pow4)");
  billiard->add_option("--a-pow4", model_opts.a_pow4, "a^4")->capture_default_str();
  billiard->add_option("--b-pow4", model_opts.b_pow4, "b^4")->capture_default_str();
  billiard->add_option("--levels", model_opts.levels, "number of lowest levels")->capture_default_str();
  auto* ising = model->add_subcommand("ising", "momentum sector of the periodic Ising chain");
  ising->add_option("--L", model_opts.length, "number of spins")->capture_default_str();
  ising->add_option("--lambda", model_opts.lambda, "transverse field")->capture_default_str();
  ising->add_option("--alpha", model_opts.alpha, "longitudinal field")->capture_default_str();
  ising->add_option("--sector", model_opts.sector, "momentum index j")->capture_default_str();
  auto* file = model->add_subcommand("file", "levels from a text file");
  file->add_option("--path", model_opts.path, "one level per line")->required();
  for (auto* sub : {billiard, ising, file}) {
    model_stats.attach(sub);
    model_ref.attach(sub, false);
    sub->add_option("--half", model_opts.half, "keep the lower or upper half of the levels");
    sub->add_option("--decimate", model_opts.stride, "keep every n-th level")->capture_default_str();
    sub->add_option("--decimate-offset", model_opts.offset, "first kept level")->capture_default_str();
    sub->add_option("--residuals", model_opts.residuals, "residual CSV path (with --reference)");
  }

  try {
    app.parse(argc, argv);
    if (workers == 0) workers = default_worker_count();
    if (sample->parsed()) return run_sample(sample_opts, sample_stats, workers);
    if (compare->parsed()) return run_compare(compare_opts, compare_stats, compare_ref, workers);
    if (density->parsed()) return run_density(density_opts);
    for (auto* sub : {billiard, ising, file})
      if (sub->parsed()) return run_model(sub->get_name(), model_opts, model_stats, model_ref);
    return kExitParameter;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParameter;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const DomainError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitParameter;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
