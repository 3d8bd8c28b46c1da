#ifndef NLCL_CONFIG_HPP
#define NLCL_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlcl/model.hpp"
#include "nlcl/solver.hpp"

namespace nlcl {

/// Schema violations, one message per line with key/line context.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::vector<std::string>& messages);
  const std::vector<std::string>& messages() const { return messages_; }

private:
  std::vector<std::string> messages_;
};

struct RunConfig {
  ModelFunctions model_fns;
  std::string kernel_family;
  double eta = 0.0;
  SchemeSpec scheme;
  GridSpec grid;            // grid.lambda == 0 means derive from the CFL bound
  bool lambda_given = false;
  InitialData initial;
  VelocityPath velocity = VelocityPath::automatic;
  bool strict = true;
  bool entropy_diag = true;
  std::string solution_csv = "solution.csv";
  std::string diagnostics_csv = "diagnostics.csv";
  std::string svg_path;  // empty: no plot
  std::string verbosity = "summary";  // quiet | summary | per_step
};

struct StudyConfig {
  RunConfig base;  // base.scheme unused; base.grid.dx is the level-0 dx
  std::vector<SchemeSpec> schemes;
  int n_min = 0;
  int n_max = 0;
  SchemeSpec reference_scheme;
  int reference_n = 0;
  std::string table_csv = "error_table.csv";
};

struct CompareConfig {
  RunConfig base;  // base.scheme unused
  std::vector<SchemeSpec> schemes;
  std::optional<SchemeSpec> reference_scheme;
  int reference_n = 0;
  std::string csv = "compare.csv";
  std::string svg = "compare.svg";
};

struct ParsedConfig {
  std::string mode;  // run | study | compare
  std::optional<RunConfig> run;
  std::optional<StudyConfig> study;
  std::optional<CompareConfig> compare;
};

/// Parses and fully validates a key=value config file (dotted keys, '#'
/// comments). Unknown keys, duplicates, missing required keys and
/// out-of-range values are all reported together.
ParsedConfig parse_config(const std::string& path);

/// Canonical one-line description of a run, used for cache keys and report
/// headers.
std::string canonical_run_string(const ModelFunctions& fns,
                                 const std::string& kernel_family, double eta,
                                 const SchemeSpec& scheme, const GridSpec& grid,
                                 const InitialData& initial);

}  // namespace nlcl

#endif
