#ifndef NLCL_STUDY_HPP
#define NLCL_STUDY_HPP

#include <iosfwd>
#include <string>

#include "nlcl/config.hpp"
#include "nlcl/diagnostics.hpp"

namespace nlcl {

struct StudyOptions {
  std::string cache_dir;  // empty: no reference caching
  bool strict = true;
  std::ostream* log = nullptr;
};

struct StudyOutcome {
  ErrorTable table;
  std::vector<RunReport> reports;  // every level run plus the reference (last)
  SolverState reference;
  GridSpec reference_grid;
};

/// Computes the reference solution (cached on disk keyed by the canonical
/// run string), runs every (scheme, level) pair with per-step invariant
/// checks, and assembles the error/EOC table. A run failing its strict
/// checks aborts the study naming the offending cell of the table.
StudyOutcome run_convergence_study(const StudyConfig& cfg,
                                   const StudyOptions& opts);

/// Executes one configured run with full diagnostics; the report keeps
/// per-step records. Used by the run/compare commands.
struct SingleRunOutcome {
  SolverState state;
  GridSpec grid;
  RunReport report;
};
SingleRunOutcome execute_run(const RunConfig& cfg, const SchemeSpec& scheme,
                             double dx, bool keep_records, bool entropy,
                             bool strict, std::ostream* warnings);

/// 64-bit FNV-1a, used for reference cache file names.
std::uint64_t fnv1a64(const std::string& s);

}  // namespace nlcl

#endif
