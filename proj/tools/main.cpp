#include <CLI11.hpp>
#include <iostream>

#include "cli.hpp"

using namespace rydberg;
using namespace rydberg::cli;

int main(int argc, char** argv) {
  CLI::App app{"Thermalization of a Rydberg-blockaded atom chain: microcanonical, Monte-Carlo, exact and reduced models"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig config;
  double lambda = 0.0;
  std::string range;
  std::string tol;
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--atoms", config.n_atoms, "Number of atoms N")->capture_default_str();
    auto* l = sub->add_option("--lambda", lambda, "Single chain length in blockade radii");
    auto* r = sub->add_option("--lambda-range", range, "Sweep min:max:step");
    l->excludes(r);
    sub->add_option("--out", config.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--format", format, "csv or json")->capture_default_str();
  };

  const std::pair<const char*, Method> methods[] = {
      {"micro", Method::micro}, {"mc", Method::mc}, {"exact", Method::exact},
      {"reduced", Method::reduced}, {"compare", Method::compare}};
  const char* help[] = {"Microcanonical P(nu), moments and spatial density",
                        "Monte-Carlo histogram of excitation positions versus the analytic density",
                        "Exact diagonalization and infinite-time average from the vacuum",
                        "Reduced collective plus localized-state model",
                        "Joint microcanonical, exact and reduced P(nu) and P_k"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(methods); ++i) {
    auto* sub = app.add_subcommand(methods[i].first, help[i]);
    add_common(sub);
    const Method m = methods[i].second;
    if (m == Method::mc) {
      sub->add_option("--seed", config.seed, "Base seed")->capture_default_str();
      sub->add_option("--reps", config.reps, "Independent draws")->capture_default_str();
    }
    if (m == Method::mc || m == Method::micro) {
      sub->add_option("--bins", config.bins, "Bins on [0, 1]")->capture_default_str();
    }
    if (m == Method::exact || m == Method::compare || m == Method::reduced) {
      sub->add_option("--tol-degeneracy", tol, "Relative gap threshold, or abs=X,rel=Y");
      sub->add_option("--max-basis", config.max_basis, "Cap on the basis dimension");
    }
    subs.push_back(sub);
  }
  auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  if (self->parsed()) return selftest(std::cout) == 0 ? 0 : 1;

  try {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i]->parsed()) continue;
      config.method = methods[i].second;
      auto* cap = subs[i]->get_option_no_throw("--max-basis");
      config.max_basis_set = cap != nullptr && cap->count() > 0;
      if (subs[i]->count("--lambda")) {
        config.grid = {lambda, lambda, 1.0};
      } else if (!range.empty()) {
        config.grid = parse_lambda_range(range);
      }
      if (!tol.empty()) config.tol = parse_tolerance(tol);
    }
    config.format = parse_format(format);
    const auto tables = run(config);
    for (const auto& path : write_outputs(config, tables)) std::cout << path << '\n';
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
