#include "cli.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rydberg/mc.hpp"
#include "rydberg/micro.hpp"
#include "rydberg/reduced.hpp"
#include "rydberg/rng.hpp"

namespace rydberg::cli {

namespace {

// Twelve significant digits keep grid values such as 0.9 + 3 * 0.05 readable.
double tidy(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

double parse_number(const std::string& text, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument(std::string(flag) + ": '" + text + "' is not a number");
  }
  return v;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + format_double(xs[i]);
  return out;
}

Table make_table(const RunConfig& c, const std::string& name, std::vector<std::string> columns) {
  Table t(std::move(columns));
  t.set_meta("tool", std::string("rydberg ") + kVersion);
  t.set_meta("table", name);
  t.set_meta("method", method_name(c.method));
  t.set_meta("atoms", format_int(c.n_atoms));
  t.set_meta("lambda_range",
             format_double(c.grid.min) + ":" + format_double(c.grid.max) + ":" + format_double(c.grid.step));
  t.set_meta("blockade_rule", "excited sites i<j allowed iff j-i >= n_b+1, n_b = floor((N-1)/lambda)");
  if (c.method == Method::mc) {
    t.set_meta("seed", std::to_string(c.seed));
    t.set_meta("reps", format_int(c.reps));
    t.set_meta("rng", std::string(kRngAlgorithm));
  }
  if (c.method == Method::mc || c.method == Method::micro) t.set_meta("bins", format_int(c.bins));
  if (c.method == Method::exact || c.method == Method::compare || c.method == Method::reduced) {
    t.set_meta("tol_degeneracy", "abs=" + format_double(c.tol.absolute) + ",rel=" + format_double(c.tol.relative));
    t.set_meta("max_basis", format_int(static_cast<std::int64_t>(c.max_basis)));
  }
  return t;
}

struct ExactResult {
  AllowedBasis basis;
  SpectralData spectrum;
  std::vector<double> p_nu;
  std::vector<double> p_site;
};

ExactResult exact_at(const RunConfig& c, const ChainSpec& spec) {
  AllowedBasis basis = build_basis(spec, c.max_basis);
  const auto h = build_hamiltonian(basis);
  const std::size_t cap = c.max_basis_set ? std::max(c.max_basis, kDefaultDenseCap) : kDefaultDenseCap;
  SpectralData sd = diagonalize(h, c.tol, cap);
  const auto rho = time_averaged_state(sd, vacuum_state(basis));
  auto p_nu = nu_probabilities(rho, basis);
  auto p_site = site_probabilities(rho, basis);
  return {std::move(basis), std::move(sd), std::move(p_nu), std::move(p_site)};
}

struct ReducedResult {
  ReducedEigensystem es;
  std::vector<double> p_nu;
  std::vector<double> p_site;
};

std::optional<ReducedResult> reduced_at(const ChainSpec& spec, const AllowedBasis* basis_hint) {
  std::optional<ReducedEigensystem> es;
  try {
    es = reduced_eigensystem(spec);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  std::optional<AllowedBasis> own;
  if (!basis_hint) own = build_basis(spec);
  const AllowedBasis& basis = basis_hint ? *basis_hint : *own;
  const auto mix = reduced_time_averaged_state(*es, basis);
  return ReducedResult{*es, reduced_nu_probabilities(mix, basis), reduced_site_probabilities(mix, basis)};
}

NamedTables run_micro(const RunConfig& c) {
  Table nu = make_table(c, "micro_nu", {"lambda", "n_b", "nu", "p_discrete", "p_continuous"});
  Table moments = make_table(c, "micro_moments", {"lambda", "n_b", "mean_nu", "std_nu", "mean_nu_continuous", "std_nu_continuous"});
  Table density = make_table(c, "micro_density", {"lambda", "bin", "xi", "density"});
  for (double lambda : c.grid.values()) {
    const auto spec = ChainSpec::from_lambda(c.n_atoms, lambda);
    const auto disc = nu_distribution(spec, CountMode::discrete);
    const auto cont = nu_distribution(spec, CountMode::continuous);
    const std::size_t top = std::max(disc.p_nu.size(), cont.p_nu.size());
    for (std::size_t v = 0; v < top; ++v) {
      nu.add(lambda, spec.n_b(), static_cast<int>(v), v < disc.p_nu.size() ? disc.p_nu[v] : 0.0,
             v < cont.p_nu.size() ? cont.p_nu[v] : 0.0);
    }
    moments.add(lambda, spec.n_b(), disc.mean_nu, disc.std_nu, cont.mean_nu, cont.std_nu);
    const auto prof = total_spatial_distribution(spec, c.bins);
    const auto xs = bin_centers(c.bins);
    for (int b = 0; b < c.bins; ++b) {
      density.add(lambda, b, xs[static_cast<std::size_t>(b)], prof.p_site[static_cast<std::size_t>(b)]);
    }
  }
  return {{"micro_nu", nu}, {"micro_moments", moments}, {"micro_density", density}};
}

NamedTables run_mc(const RunConfig& c) {
  Table density = make_table(c, "mc_density", {"lambda", "bin", "xi", "mc_density", "analytic_density", "difference"});
  Table summary = make_table(c, "mc_summary",
                             {"lambda", "n_b", "sample_mean_nu", "sample_std_nu", "mean_nu", "std_nu", "rms"});
  for (double lambda : c.grid.values()) {
    McRun run{.spec = ChainSpec::from_lambda(c.n_atoms, lambda), .n_rep = c.reps, .n_bins = c.bins, .seed = c.seed};
    run = run_histogram(std::move(run));
    const auto analytic = total_spatial_distribution(run.spec, c.bins, true);
    const auto xs = bin_centers(c.bins);
    for (std::size_t b = 0; b < xs.size(); ++b) {
      density.add(lambda, static_cast<int>(b), xs[b], run.normalized[b], analytic.p_site[b],
                  run.normalized[b] - analytic.p_site[b]);
    }
    summary.add(lambda, run.spec.n_b(), run.sample_mean_nu, run.sample_std_nu, analytic.mean_nu, analytic.std_nu,
                compare_to_analytic(run, analytic));
  }
  return {{"mc_density", density}, {"mc_summary", summary}};
}

NamedTables run_exact(const RunConfig& c) {
  Table summary = make_table(c, "exact_summary",
                             {"lambda", "n_b", "dim", "dim_even", "dim_odd", "groups", "tolerance_used", "kernel_dim",
                              "kernel_bound", "parity_max_deviation", "p_even", "max_residual"});
  Table nu = make_table(c, "exact_nu", {"lambda", "nu", "p"});
  Table sites = make_table(c, "exact_sites", {"lambda", "k", "p"});
  Table spectrum = make_table(c, "exact_spectrum", {"lambda", "rank", "energy", "abs_energy", "gap"});
  Table peaks = make_table(c, "exact_peaks", {"lambda", "k", "peak_ratio"});
  for (double lambda : c.grid.values()) {
    const auto spec = ChainSpec::from_lambda(c.n_atoms, lambda);
    const auto r = exact_at(c, spec);
    const double tol = 1e-8;
    const auto parity = parity_balance_check(r.spectrum, r.basis, 1e-6);
    double p_even = 0.0;
    for (std::size_t v = 0; v < r.p_nu.size(); v += 2) p_even += r.p_nu[v];
    summary.add(lambda, spec.n_b(), r.basis.size(), r.basis.dim_even(), r.basis.dim_odd(), r.spectrum.groups.size(),
                r.spectrum.tolerance_used, kernel_dimension(r.spectrum, tol), kernel_lower_bound(r.basis),
                parity.max_deviation, p_even, r.spectrum.max_residual);
    for (std::size_t v = 0; v < r.p_nu.size(); ++v) nu.add(lambda, static_cast<int>(v), r.p_nu[v]);
    for (std::size_t k = 0; k < r.p_site.size(); ++k) sites.add(lambda, static_cast<int>(k), r.p_site[k]);
    const auto& e = r.spectrum.eigenvalues;
    for (Eigen::Index n = 0; n < e.size(); ++n) {
      spectrum.add(lambda, static_cast<int>(n), e[n], std::abs(e[n]), n == 0 ? std::string() : cell(e[n] - e[n - 1]));
    }
    for (const auto& p : localization_peaks(r.p_site)) peaks.add(lambda, p.site, p.ratio);
  }
  return {{"exact_summary", summary}, {"exact_nu", nu}, {"exact_sites", sites}, {"exact_spectrum", spectrum},
          {"exact_peaks", peaks}};
}

NamedTables run_reduced(const RunConfig& c) {
  Table levels = make_table(c, "reduced_levels",
                            {"lambda", "n_b", "rho", "e1", "e2", "eps0", "resonance_site", "e1_krylov", "e2_krylov"});
  Table nu = make_table(c, "reduced_nu", {"lambda", "nu", "p"});
  Table sites = make_table(c, "reduced_sites", {"lambda", "k", "p"});
  std::vector<double> skipped;
  for (double lambda : c.grid.values()) {
    const auto spec = ChainSpec::from_lambda(c.n_atoms, lambda);
    const auto r = reduced_at(spec, nullptr);
    if (!r) {
      skipped.push_back(lambda);
      continue;
    }
    const auto& es = r->es;
    levels.add(lambda, spec.n_b(), es.rho, es.e1, es.e2, es.epsilon.front(),
               es.resonance ? cell(*es.resonance) : std::string(), es.exact_e1, es.exact_e2);
    for (std::size_t v = 0; v < r->p_nu.size(); ++v) nu.add(lambda, static_cast<int>(v), r->p_nu[v]);
    for (std::size_t k = 0; k < r->p_site.size(); ++k) sites.add(lambda, static_cast<int>(k), r->p_site[k]);
  }
  for (Table* t : {&levels, &nu, &sites}) t->set_meta("skipped_lambda", join(skipped));
  return {{"reduced_levels", levels}, {"reduced_nu", nu}, {"reduced_sites", sites}};
}

NamedTables run_compare(const RunConfig& c) {
  Table nu = make_table(c, "compare_nu", {"lambda", "nu", "micro", "exact", "reduced"});
  Table sites = make_table(c, "compare_sites", {"lambda", "k", "micro", "exact", "reduced"});
  for (double lambda : c.grid.values()) {
    const auto spec = ChainSpec::from_lambda(c.n_atoms, lambda);
    const auto micro = nu_distribution(spec, CountMode::discrete);
    const auto micro_sites = site_occupation(spec);
    const auto ex = exact_at(c, spec);
    const auto red = reduced_at(spec, &ex.basis);
    auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
    const std::size_t top = std::max(micro.p_nu.size(), ex.p_nu.size());
    for (std::size_t v = 0; v < top; ++v) {
      nu.add(lambda, static_cast<int>(v), at(micro.p_nu, v), at(ex.p_nu, v),
             red ? cell(at(red->p_nu, v)) : std::string());
    }
    for (std::size_t k = 0; k < ex.p_site.size(); ++k) {
      sites.add(lambda, static_cast<int>(k), micro_sites[k], ex.p_site[k],
                red ? cell(red->p_site[k]) : std::string());
    }
  }
  return {{"compare_nu", nu}, {"compare_sites", sites}};
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::micro: return "micro";
    case Method::mc: return "mc";
    case Method::exact: return "exact";
    case Method::reduced: return "reduced";
    case Method::compare: return "compare";
  }
  return "?";
}

std::vector<double> LambdaGrid::values() const {
  std::vector<double> out;
  const auto count = static_cast<long long>(std::floor((max - min) / step + 1e-9)) + 1;
  for (long long i = 0; i < count; ++i) out.push_back(tidy(min + static_cast<double>(i) * step));
  return out;
}

LambdaGrid parse_lambda_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("--lambda-range: expected min:max:step, got '" + text + "'");
  return {parse_number(parts[0], "--lambda-range"), parse_number(parts[1], "--lambda-range"),
          parse_number(parts[2], "--lambda-range")};
}

DegeneracyTolerance parse_tolerance(const std::string& text) {
  DegeneracyTolerance tol;
  if (text.find('=') == std::string::npos) {
    tol.relative = parse_number(text, "--tol-degeneracy");
    return tol;
  }
  tol.relative = 0.0;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    const double v = parse_number(eq == std::string::npos ? "" : item.substr(eq + 1), "--tol-degeneracy");
    if (key == "abs") {
      tol.absolute = v;
    } else if (key == "rel") {
      tol.relative = v;
    } else {
      throw std::invalid_argument("--tol-degeneracy: unknown key '" + key + "' (use abs= or rel=)");
    }
  }
  return tol;
}

void validate(const RunConfig& c) {
  if (c.n_atoms < 2) throw std::invalid_argument("--atoms: need at least 2 atoms");
  if (!(c.grid.min > 0.0) || !std::isfinite(c.grid.max)) throw std::invalid_argument("--lambda: values must be positive");
  if (c.grid.max < c.grid.min) throw std::invalid_argument("--lambda-range: max is below min");
  if (!(c.grid.step > 0.0)) throw std::invalid_argument("--lambda-range: step must be positive");
  if (c.grid.values().size() > 100'000) throw std::invalid_argument("--lambda-range: more than 100000 grid points");
  if (c.tol.absolute < 0.0 || c.tol.relative < 0.0 || (c.tol.absolute == 0.0 && c.tol.relative == 0.0)) {
    throw std::invalid_argument("--tol-degeneracy: thresholds must be non-negative and not both zero");
  }
  if (c.reps < 1) throw std::invalid_argument("--reps: need at least one repetition");
  if (c.bins < 1) throw std::invalid_argument("--bins: need at least one bin");
  if (c.max_basis < 1) throw std::invalid_argument("--max-basis: must be positive");
  const bool diagonalizes = c.method == Method::exact || c.method == Method::compare;
  if (diagonalizes && c.grid.max >= 2.0 && !c.max_basis_set) {
    throw std::invalid_argument(
        "exact diagonalization is limited to lambda < 2 by default; pass --max-basis to raise the basis cap");
  }
}

NamedTables run(const RunConfig& config) {
  validate(config);
  switch (config.method) {
    case Method::micro: return run_micro(config);
    case Method::mc: return run_mc(config);
    case Method::exact: return run_exact(config);
    case Method::reduced: return run_reduced(config);
    case Method::compare: return run_compare(config);
  }
  return {};
}

std::vector<std::string> write_outputs(const RunConfig& config, const NamedTables& tables) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  std::vector<std::string> paths;
  for (const auto& [name, table] : tables) {
    const fs::path path = fs::path(config.out_dir) / (name + "." + std::string(extension(config.format)));
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_table(os, table, config.format);
    if (!os) throw std::runtime_error("write failed for " + path.string());
    paths.push_back(path.string());
  }
  return paths;
}

int selftest(std::ostream& os) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    os << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    if (!ok) ++failures;
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report(name, false, std::string("exception: ") + e.what());
    }
  };

  guarded("basis counts", [&] {
    int mismatches = 0;
    for (int n = 1; n <= 12; ++n) {
      for (int nb = 0; nb <= n; ++nb) {
        const auto spec = ChainSpec::explicit_spec(n, nb, 1.0);
        const auto basis = build_basis(spec);
        for (std::size_t v = 0; v < basis.by_nu().size(); ++v) {
          if (BigInt(basis.by_nu()[v].size()) != count_discrete(n, nb, static_cast<int>(v))) ++mismatches;
        }
      }
    }
    report("basis counts", mismatches == 0, "N <= 12, all n_b, mismatches=" + std::to_string(mismatches));
  });

  guarded("sampler uniformity", [&] {
    const auto spec = ChainSpec::explicit_spec(9, 1, 8.0);
    const auto basis = build_basis(spec);
    const ConfigSampler sampler(spec);
    std::vector<std::int64_t> hits(basis.size(), 0);
    const int draws = 200'000;
    Xoshiro256 rng(7);
    for (int i = 0; i < draws; ++i) ++hits[basis.index_of(sampler.sample(rng))];
    const double expected = static_cast<double>(draws) / static_cast<double>(basis.size());
    double chi2 = 0.0;
    for (auto h : hits) chi2 += (static_cast<double>(h) - expected) * (static_cast<double>(h) - expected) / expected;
    const boost::math::chi_squared dist(static_cast<double>(basis.size() - 1));
    const double p = boost::math::cdf(boost::math::complement(dist, chi2));
    report("sampler uniformity", p > 0.001, "N=9 n_b=1, chi2=" + format_double(chi2) + " p=" + format_double(p));
  });

  guarded("parity balance", [&] {
    const auto spec = ChainSpec::from_lambda(30, 1.5);
    const auto basis = build_basis(spec);
    const auto sd = diagonalize(build_hamiltonian(basis));
    const auto rep = parity_balance_check(sd, basis, 1e-6);
    const auto p = nu_probabilities(time_averaged_state(sd, vacuum_state(basis)), basis);
    double even = 0.0;
    for (std::size_t v = 0; v < p.size(); v += 2) even += p[v];
    report("parity balance", rep.max_deviation <= 1e-8 && std::abs(even - 0.5) <= 1e-8,
           "N=30 lambda=1.5, max deviation=" + format_double(rep.max_deviation) + " P(even)=" + format_double(even));
  });

  guarded("time-averaged state", [&] {
    const auto spec = ChainSpec::from_lambda(20, 1.7);
    const auto basis = build_basis(spec);
    const auto h = build_hamiltonian(basis);
    const auto rho = time_averaged_state(diagonalize(h), vacuum_state(basis));
    const auto p = site_probabilities(rho, basis);
    double asym = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) asym = std::max(asym, std::abs(p[k] - p[p.size() - 1 - k]));
    const bool ok = std::abs(rho.trace() - 1.0) <= 1e-10 && std::abs(rho.energy(h)) <= 1e-10 && asym <= 1e-10;
    report("time-averaged state", ok,
           "trace=" + format_double(rho.trace()) + " energy=" + format_double(rho.energy(h)) +
               " mirror asymmetry=" + format_double(asym));
  });

  guarded("reduced trace identity", [&] {
    double worst = 0.0;
    for (double lambda = 1.05; lambda < 1.99; lambda += 0.05) {
      const auto es = reduced_eigensystem(ChainSpec::from_lambda(200, lambda));
      const double n = 200.0;
      worst = std::max(worst, std::abs(es.e1 * es.e1 + es.e2 * es.e2 - n * (4.0 * es.rho + 3.0) / 3.0) / n);
    }
    report("reduced trace identity", worst <= 1e-12, "max relative error=" + format_double(worst));
  });

  guarded("table round trip", [&] {
    Table t({"x", "label"});
    t.set_meta("seed", "1");
    t.add(0.1, "a,b");
    t.add(-2.5e-300, "");
    bool ok = true;
    for (Format f : {Format::csv, Format::json}) {
      const std::string once = to_string(t, f);
      ok = ok && to_string(parse_table(once, f), f) == once;
    }
    report("table round trip", ok, "csv and json");
  });

  os << (failures == 0 ? "selftest: all checks passed" : "selftest: " + std::to_string(failures) + " failed") << '\n';
  return failures;
}

}  // namespace rydberg::cli
