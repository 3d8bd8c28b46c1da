#include "nlcl/study.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "nlcl/csv.hpp"

namespace nlcl {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct ProblemParts {
  ModelSpec model;
  Kernel kernel;
  KernelWeights weights;
};

/// Binds the model to the invariant interval of the projected data and
/// derives the weights for this dx.
ProblemParts bind_problem(const RunConfig& cfg, double dx) {
  GridSpec grid = cfg.grid;
  grid.dx = dx;
  grid.lambda = 1.0;  // placeholder; projection does not use it
  Kernel kernel = Kernel::make(cfg.kernel_family, cfg.eta);
  std::vector<double> cells = project_initial_data(cfg.initial, grid);
  auto [mn, mx] = std::minmax_element(cells.begin(), cells.end());
  ModelSpec model = make_model_spec(cfg.model_fns, Interval{*mn, *mx});
  KernelWeights weights = compute_weights(kernel, dx);
  return ProblemParts{std::move(model), std::move(kernel), std::move(weights)};
}

}  // namespace

SingleRunOutcome execute_run(const RunConfig& cfg, const SchemeSpec& scheme,
                             double dx, bool keep_records, bool entropy,
                             bool strict, std::ostream* warnings) {
  ProblemParts p = bind_problem(cfg, dx);
  GridSpec grid = cfg.grid;
  grid.dx = dx;

  SchemeSpec sch = scheme;
  Stepper probe(p.model, p.kernel, p.weights, sch, [&] {
    GridSpec g = grid;
    g.lambda = 1.0;
    return g;
  }(), VelocityPath::automatic);
  grid.lambda = cfg.lambda_given ? cfg.grid.lambda : probe.max_lambda();
  grid.validate();

  Stepper stepper(p.model, p.kernel, p.weights, sch, grid, cfg.velocity);
  std::vector<double> initial_cells = project_initial_data(cfg.initial, grid);

  CheckerOptions copts;
  copts.keep_records = keep_records;
  copts.entropy = entropy && !sch.is_classic_variant();
  copts.entropy_random_k_per_step = copts.entropy ? 8 : 0;
  InvariantChecker checker(stepper, p.kernel, p.weights, initial_cells, copts);

  RunOptions ropts;
  ropts.strict_cfl = strict;
  ropts.velocity_path = cfg.velocity;
  ropts.warnings = warnings;
  ropts.on_step = [&](const SolverState& prev, const SolverState& next,
                      const StepScratch& scratch, double lam) {
    checker.check(prev, next, scratch, lam);
    return true;  // collect failures; callers decide what aborts
  };

  RunResult rr = run(p.model, p.kernel, p.weights, sch, grid, cfg.initial, ropts);
  SingleRunOutcome out;
  out.state = std::move(rr.state);
  out.grid = grid;
  out.report = checker.report();
  return out;
}

StudyOutcome run_convergence_study(const StudyConfig& cfg,
                                   const StudyOptions& opts) {
  const RunConfig& base = cfg.base;
  StudyOutcome out;
  out.table.schemes.clear();
  for (const auto& s : cfg.schemes) out.table.schemes.push_back(s.name);

  // reference solution, cached on disk keyed by the canonical run string
  const double ref_dx = base.grid.dx * std::pow(2.0, -cfg.reference_n);
  GridSpec ref_grid = base.grid;
  ref_grid.dx = ref_dx;
  std::string ref_key;
  {
    GridSpec key_grid = ref_grid;
    key_grid.lambda = base.lambda_given ? base.grid.lambda : 0.0;
    ref_key = canonical_run_string(base.model_fns, base.kernel_family, base.eta,
                                   cfg.reference_scheme, key_grid, base.initial);
  }
  out.table.reference_desc = cfg.reference_scheme.name + " at dx=" +
                             format_double(ref_dx) + " (n=" +
                             std::to_string(cfg.reference_n) + ")";

  bool have_ref = false;
  std::string cache_file;
  if (!opts.cache_dir.empty()) {
    std::filesystem::create_directories(opts.cache_dir);
    std::ostringstream name;
    name << opts.cache_dir << "/ref_" << std::hex << fnv1a64(ref_key) << ".csv";
    cache_file = name.str();
    if (std::filesystem::exists(cache_file)) {
      try {
        std::vector<double> x, rho;
        std::string header = read_solution_csv(cache_file, x, rho);
        if (header == ref_key &&
            static_cast<int>(rho.size()) ==
                static_cast<int>(std::llround(
                    (ref_grid.x_max - ref_grid.x_min) / ref_dx))) {
          out.reference.cells = std::move(rho);
          out.reference.time = ref_grid.t_end;
          have_ref = true;
          if (opts.log) *opts.log << "reference: cache hit\n";
        }
      } catch (const std::exception&) {
        // unreadable or truncated cache entry: recompute below
      }
    }
  }
  if (!have_ref) {
    if (opts.log)
      *opts.log << "reference: computing " << out.table.reference_desc << "\n";
    SingleRunOutcome ref = execute_run(base, cfg.reference_scheme, ref_dx,
                                       /*keep_records=*/false,
                                       /*entropy=*/false, opts.strict, opts.log);
    if (opts.strict && !ref.report.all_ok()) {
      throw std::runtime_error("convergence study aborted: reference run (" +
                               out.table.reference_desc +
                               ") failed invariant checks: " +
                               ref.report.summary());
    }
    out.reports.push_back(ref.report);
    out.reference = std::move(ref.state);
    ref_grid = ref.grid;
    if (!cache_file.empty()) {
      std::vector<double> x(out.reference.cells.size());
      for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = ref_grid.cell_center(static_cast<int>(j));
      // write-then-rename keeps interrupted runs from leaving torn entries
      std::string tmp = cache_file + ".tmp";
      write_solution_csv_with_header(tmp, ref_key, x, out.reference.cells);
      std::filesystem::rename(tmp, cache_file);
    }
  }
  out.reference_grid = ref_grid;

  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const double dx = base.grid.dx * std::pow(2.0, -n);
    out.table.rows.push_back({n, dx});
    out.table.errors.emplace_back();
    const int ratio = 1 << (cfg.reference_n - n);
    for (const auto& scheme : cfg.schemes) {
      if (opts.log)
        *opts.log << "level n=" << n << " dx=" << format_double(dx)
                  << " scheme=" << scheme.name << "\n";
      SingleRunOutcome run_out =
          execute_run(base, scheme, dx, /*keep_records=*/false,
                      /*entropy=*/base.entropy_diag, opts.strict, opts.log);
      if (opts.strict && !run_out.report.all_ok()) {
        throw std::runtime_error(
            "convergence study aborted at scheme=" + scheme.name +
            ", n=" + std::to_string(n) +
            ": " + run_out.report.summary());
      }
      out.reports.push_back(run_out.report);
      out.table.errors.back().push_back(
          l1_error(run_out.state.cells, out.reference.cells, ratio, dx));
    }
  }
  out.table.compute_rates();
  return out;
}

}  // namespace nlcl
