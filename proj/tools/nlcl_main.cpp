// Command-line front end: single runs, convergence studies, weight dumps and
// scheme comparisons, with CSV/SVG outputs.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nlcl/csv.hpp"
#include "nlcl/study.hpp"
#include "nlcl/svg.hpp"

namespace fs = std::filesystem;
using namespace nlcl;

namespace {

// exit codes: 0 ok, 1 usage/config, 2 runtime error, 3 invariant violation
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitInvariant = 3;

std::string resolve_out(const std::string& out_dir, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(out_dir) / path).string();
}

std::string resolve_config_path(const std::string& arg) {
  if (fs::exists(arg)) return arg;
  // bare preset names resolve against ./presets and the binary's tree
  std::vector<fs::path> candidates = {fs::path("presets") / (arg + ".cfg")};
  for (const auto& c : candidates)
    if (fs::exists(c)) return c.string();
  return arg;  // let the parser report the failure
}

void apply_mode_flags(RunConfig& rc, bool strict_flag, bool permissive_flag) {
  if (strict_flag) rc.strict = true;
  if (permissive_flag) rc.strict = false;
}

std::vector<double> cell_centers(const GridSpec& g) {
  std::vector<double> x(static_cast<std::size_t>(g.cell_count()));
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = g.cell_center(static_cast<int>(j));
  return x;
}

int cmd_run(const RunConfig& cfg, const std::string& out_dir) {
  SingleRunOutcome out =
      execute_run(cfg, cfg.scheme, cfg.grid.dx, /*keep_records=*/true,
                  cfg.entropy_diag, cfg.strict, &std::cerr);
  write_solution_csv(resolve_out(out_dir, cfg.solution_csv),
                     cell_centers(out.grid), out.state.cells);
  write_diagnostics_csv(resolve_out(out_dir, cfg.diagnostics_csv), out.report);
  if (!cfg.svg_path.empty()) {
    PlotSeries s{cfg.scheme.name, cell_centers(out.grid), out.state.cells};
    emit_svg_plot(resolve_out(out_dir, cfg.svg_path), {s}, "x", "rho");
  }
  if (cfg.verbosity != "quiet") {
    auto [mn, mx] =
        std::minmax_element(out.state.cells.begin(), out.state.cells.end());
    std::cout << "final state: t=" << out.state.time << " min="
              << format_double(*mn) << " max=" << format_double(*mx)
              << " steps=" << out.report.steps << "\n";
    if (cfg.verbosity == "per_step") {
      for (const auto& r : out.report.records)
        std::cout << "t=" << format_double(r.t) << " min=" << format_double(r.min)
                  << " max=" << format_double(r.max)
                  << " tv=" << format_double(r.tv) << "\n";
    }
  }
  bool ok = out.report.all_ok();
  std::cerr << "nlcl: status=" << (ok ? "ok" : "invariant_violation") << " "
            << out.report.summary() << "\n";
  return ok ? kExitOk : kExitInvariant;
}

int cmd_convergence(const StudyConfig& cfg, const std::string& out_dir) {
  StudyOptions opts;
  opts.cache_dir = (fs::path(out_dir) / "ref_cache").string();
  opts.strict = cfg.base.strict;
  opts.log = &std::cerr;
  StudyOutcome out = run_convergence_study(cfg, opts);
  write_error_table_csv(resolve_out(out_dir, cfg.table_csv), out.table);
  std::cout << render_error_table(out.table);
  bool ok = true;
  for (const auto& r : out.reports) ok = ok && r.all_ok();
  std::cerr << "nlcl: status=" << (ok ? "ok" : "invariant_violation")
            << " runs=" << out.reports.size() << " table="
            << resolve_out(out_dir, cfg.table_csv) << "\n";
  return ok ? kExitOk : kExitInvariant;
}

int cmd_compare(const CompareConfig& cfg, const std::string& out_dir) {
  std::vector<PlotSeries> series;
  std::vector<std::vector<double>> columns;
  GridSpec grid;
  bool all_ok = true;
  for (const auto& scheme : cfg.schemes) {
    SingleRunOutcome out =
        execute_run(cfg.base, scheme, cfg.base.grid.dx, /*keep_records=*/false,
                    cfg.base.entropy_diag, cfg.base.strict, &std::cerr);
    grid = out.grid;
    all_ok = all_ok && out.report.all_ok();
    series.push_back({scheme.name, cell_centers(out.grid), out.state.cells});
    columns.push_back(out.state.cells);
  }
  if (cfg.reference_scheme) {
    double ref_dx = cfg.base.grid.dx * std::pow(2.0, -cfg.reference_n);
    SingleRunOutcome ref =
        execute_run(cfg.base, *cfg.reference_scheme, ref_dx,
                    /*keep_records=*/false, false, cfg.base.strict, &std::cerr);
    all_ok = all_ok && ref.report.all_ok();
    series.push_back({"ref. sol.", cell_centers(ref.grid), ref.state.cells});
  }
  // combined CSV on the coarse grid
  {
    std::ofstream os(resolve_out(out_dir, cfg.csv), std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + cfg.csv);
    os << "x";
    for (const auto& s : cfg.schemes) os << "," << s.name;
    os << "\n";
    auto xs = cell_centers(grid);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      os << format_double(xs[j]);
      for (const auto& col : columns) os << "," << format_double(col[j]);
      os << "\n";
    }
  }
  if (!cfg.svg.empty())
    emit_svg_plot(resolve_out(out_dir, cfg.svg), series, "x", "rho");
  std::cerr << "nlcl: status=" << (all_ok ? "ok" : "invariant_violation")
            << " schemes=" << cfg.schemes.size() << "\n";
  return all_ok ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-volume solver for 1d nonlocal scalar conservation laws"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string out_dir = ".";
  if (const char* env = std::getenv("NLCL_OUT_DIR")) out_dir = env;
  bool strict_flag = false, permissive_flag = false;
  app.add_option("--out-dir", out_dir,
                 "output directory (default: $NLCL_OUT_DIR or .)");
  app.add_flag("--strict", strict_flag, "fail on CFL/invariant violations");
  app.add_flag("--permissive", permissive_flag,
               "warn instead of failing on CFL violations");

  std::string run_cfg, study_cfg, compare_cfg;
  auto* run_cmd = app.add_subcommand("run", "single simulation from a config");
  run_cmd->add_option("config", run_cfg, "config file or preset name")
      ->required();
  auto* conv_cmd =
      app.add_subcommand("convergence", "multi-resolution error/EOC table");
  conv_cmd->add_option("config", study_cfg, "config file or preset name")
      ->required();
  auto* cmp_cmd = app.add_subcommand("compare", "run several schemes and plot");
  cmp_cmd->add_option("config", compare_cfg, "config file or preset name")
      ->required();

  std::string w_kernel = "linear_downstream";
  double w_eta = 0.1, w_dx = 0.01;
  std::string w_out = "weights.csv";
  auto* w_cmd = app.add_subcommand("weights", "dump quadrature weights as CSV");
  w_cmd->add_option("--kernel", w_kernel, "kernel family");
  w_cmd->add_option("--eta", w_eta, "nonlocal horizon")->required();
  w_cmd->add_option("--dx", w_dx, "cell width")->required();
  w_cmd->add_option("--out", w_out, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);
    if (*w_cmd) {
      Kernel kernel = Kernel::make(w_kernel, w_eta);
      KernelWeights w = compute_weights(kernel, w_dx);
      write_weights_csv(resolve_out(out_dir, w_out), w);
      WeightsCheck check = verify_weights(w, kernel, w_dx);
      std::cout << check.summary() << "\n";
      return kExitOk;
    }
    if (*run_cmd) {
      ParsedConfig pc = parse_config(resolve_config_path(run_cfg));
      if (pc.mode != "run") throw config_error({"config mode is not 'run'"});
      apply_mode_flags(*pc.run, strict_flag, permissive_flag);
      return cmd_run(*pc.run, out_dir);
    }
    if (*conv_cmd) {
      ParsedConfig pc = parse_config(resolve_config_path(study_cfg));
      if (pc.mode != "study") throw config_error({"config mode is not 'study'"});
      apply_mode_flags(pc.study->base, strict_flag, permissive_flag);
      return cmd_convergence(*pc.study, out_dir);
    }
    if (*cmp_cmd) {
      ParsedConfig pc = parse_config(resolve_config_path(compare_cfg));
      if (pc.mode != "compare")
        throw config_error({"config mode is not 'compare'"});
      apply_mode_flags(pc.compare->base, strict_flag, permissive_flag);
      return cmd_compare(*pc.compare, out_dir);
    }
  } catch (const config_error& e) {
    std::cerr << "nlcl: status=config_error\n" << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "nlcl: status=error what=" << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
