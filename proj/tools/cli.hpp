#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "rydberg/basis.hpp"
#include "rydberg/spectral.hpp"
#include "rydberg/table.hpp"

namespace rydberg::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Method { micro, mc, exact, reduced, compare };

const char* method_name(Method m);

struct LambdaGrid {
  double min = 1.5;
  double max = 1.5;
  double step = 0.1;

  /// min, min + step, ... up to max (inclusive within step * 1e-9).
  std::vector<double> values() const;
};

/// "min:max:step".
LambdaGrid parse_lambda_range(const std::string& text);

/// A bare number sets the relative threshold; otherwise a comma list of
/// abs=X and rel=Y.
DegeneracyTolerance parse_tolerance(const std::string& text);

struct RunConfig {
  Method method = Method::exact;
  int n_atoms = 100;
  LambdaGrid grid;
  std::uint64_t seed = 1;
  std::int64_t reps = 50'000;
  int bins = 100;
  DegeneracyTolerance tol;
  std::size_t max_basis = kDefaultMaxBasis;
  bool max_basis_set = false;
  std::string out_dir = "rydberg-out";
  Format format = Format::csv;
};

/// Throws std::invalid_argument with a message naming the offending flag.
void validate(const RunConfig& config);

using NamedTables = std::vector<std::pair<std::string, Table>>;

/// Computes every table of the selected method; order is fixed.
NamedTables run(const RunConfig& config);

/// Writes <out_dir>/<name>.<ext> for each table and returns the paths.
std::vector<std::string> write_outputs(const RunConfig& config, const NamedTables& tables);

/// Quick invariant checks; prints one line per check, returns the failure count.
int selftest(std::ostream& os);

}  // namespace rydberg::cli
