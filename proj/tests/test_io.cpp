#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nlcl/config.hpp"
#include "nlcl/csv.hpp"
#include "nlcl/study.hpp"
#include "nlcl/svg.hpp"

using namespace nlcl;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = (fs::temp_directory_path() / name).string();
  std::ofstream os(path, std::ios::binary);
  os << content;
  return path;
}

const char* kRunConfig = R"(# smoke run
mode = run
model.name = arrhenius
kernel.name = linear_downstream
kernel.eta = 0.1
scheme.name = godunov
grid.x_min = 0
grid.x_max = 2
grid.dx = 0.01
grid.t_end = 0.05
grid.lambda = 0.2
grid.boundary = outflow_constant
initial.pieces = 0.75 1.25 0.8
initial.default = 0
)";

}  // namespace

TEST_CASE("float formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 0.0343, 6.6881e-4, 1.0, 0.0, -2.5e-13}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(0.25) == "0.25");
}

TEST_CASE("config parsing: full run config") {
  auto path = write_temp("nlcl_run.cfg", kRunConfig);
  auto pc = parse_config(path);
  REQUIRE(pc.mode == "run");
  REQUIRE(pc.run.has_value());
  CHECK(pc.run->model_fns.name == "arrhenius");
  CHECK(pc.run->eta == 0.1);
  CHECK(pc.run->scheme.name == "godunov");
  CHECK(pc.run->grid.dx == 0.01);
  CHECK(pc.run->lambda_given);
  REQUIRE(pc.run->initial.pieces.size() == 1);
  CHECK(pc.run->initial.pieces[0].value == 0.8);
}

TEST_CASE("config parsing: unknown and missing keys are reported together") {
  auto path = write_temp("nlcl_bad.cfg",
                         "mode = run\nmodel.name = arrhenius\n"
                         "kernel.name = linear_downstream\nkernel.eta = 0.1\n"
                         "scheme.name = godunov\ngrid.x_min = 0\n"
                         "grid.x_max = 2\ngrid.dx = 0.01\n"
                         "grid.typo_key = 3\n"  // unknown
                         "initial.pieces = 0 1 0.5\n");
  // grid.t_end missing, grid.typo_key unknown
  try {
    parse_config(path);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    std::string what = e.what();
    CHECK(what.find("grid.t_end") != std::string::npos);
    CHECK(what.find("typo_key") != std::string::npos);
  }
}

TEST_CASE("config parsing: empty file lists required keys") {
  auto path = write_temp("nlcl_empty.cfg", "\n");
  CHECK_THROWS_AS(parse_config(path), config_error);
}

TEST_CASE("config parsing: upwind with a nonlinear model is rejected at run") {
  std::string cfg = kRunConfig;
  cfg.replace(cfg.find("scheme.name = godunov"), 21, "scheme.name = upwind ");
  auto path = write_temp("nlcl_upwind.cfg", cfg);
  auto pc = parse_config(path);  // schema-valid; the guard fires on execution
  CHECK_THROWS(execute_run(*pc.run, pc.run->scheme, pc.run->grid.dx, false,
                           false, true, nullptr));
}

TEST_CASE("execute_run produces deterministic csv bytes") {
  auto path = write_temp("nlcl_run2.cfg", kRunConfig);
  auto pc = parse_config(path);
  auto out1 = execute_run(*pc.run, pc.run->scheme, pc.run->grid.dx, true, true,
                          true, nullptr);
  auto out2 = execute_run(*pc.run, pc.run->scheme, pc.run->grid.dx, true, true,
                          true, nullptr);
  auto f1 = (fs::temp_directory_path() / "nlcl_sol1.csv").string();
  auto f2 = (fs::temp_directory_path() / "nlcl_sol2.csv").string();
  std::vector<double> x(out1.state.cells.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = out1.grid.cell_center(static_cast<int>(j));
  write_solution_csv(f1, x, out1.state.cells);
  write_solution_csv(f2, x, out2.state.cells);
  CHECK(slurp(f1) == slurp(f2));
  CHECK(out1.report.all_ok());
}

TEST_CASE("solution csv round-trip with header") {
  auto path = (fs::temp_directory_path() / "nlcl_hdr.csv").string();
  std::vector<double> x{0.5, 1.5}, rho{0.25, 1.0 / 3.0};
  write_solution_csv_with_header(path, "key-string", x, rho);
  std::vector<double> x2, rho2;
  auto header = read_solution_csv(path, x2, rho2);
  CHECK(header == "key-string");
  CHECK(x2 == x);
  CHECK(rho2 == rho);
}

TEST_CASE("weights csv layout") {
  auto w = compute_weights(Kernel::make("linear_downstream", 0.1), 0.05);
  auto path = (fs::temp_directory_path() / "nlcl_w.csv").string();
  write_weights_csv(path, w);
  auto text = slurp(path);
  CHECK(text == "k,gamma_k\n0,0.75\n1,0.25\nsum,1\n");
}

TEST_CASE("svg plot is deterministic, legend included, empty list rejected") {
  PlotSeries s1{"flat", {0.0, 1.0, 2.0}, {0.5, 0.5, 0.5}};
  PlotSeries s2{"bump", {0.0, 1.0, 2.0}, {0.1, 0.9, 0.1}};
  auto p1 = (fs::temp_directory_path() / "nlcl_a.svg").string();
  auto p2 = (fs::temp_directory_path() / "nlcl_b.svg").string();
  emit_svg_plot(p1, {s1, s2}, "x", "rho");
  emit_svg_plot(p2, {s1, s2}, "x", "rho");
  auto t1 = slurp(p1);
  CHECK(t1 == slurp(p2));
  CHECK(t1.find("<polyline") != std::string::npos);
  CHECK(t1.find("bump") != std::string::npos);
  CHECK_THROWS(emit_svg_plot(p1, {}, "x", "y"));
  PlotSeries bad{"bad", {0.0, 1.0}, {0.0}};
  CHECK_THROWS(emit_svg_plot(p1, {bad}, "x", "y"));
}

TEST_CASE("convergence study on a tiny ladder with cache") {
  std::string cfg = R"(mode = study
model.name = arrhenius
kernel.name = linear_downstream
kernel.eta = 0.1
grid.x_min = 0
grid.x_max = 2
grid.dx = 0.04
grid.t_end = 0.1
grid.lambda = 0.2
grid.boundary = outflow_constant
initial.pieces = 0.76 1.24 0.8
initial.default = 0
study.schemes = godunov lax_friedrichs
study.n_min = 0
study.n_max = 1
study.reference.scheme = godunov
study.reference.n = 3
diagnostics.entropy = off
)";
  auto path = write_temp("nlcl_study.cfg", cfg);
  auto pc = parse_config(path);
  REQUIRE(pc.study.has_value());
  StudyOptions opts;
  auto cache = fs::temp_directory_path() / "nlcl_cache";
  fs::remove_all(cache);
  opts.cache_dir = cache.string();
  auto out1 = run_convergence_study(*pc.study, opts);
  REQUIRE(out1.table.rows.size() == 2);
  REQUIRE(out1.table.errors[0].size() == 2);
  CHECK(out1.table.errors[0][0] > 0.0);
  // refinement shrinks the error and the study caches the reference
  CHECK(out1.table.errors[1][0] < out1.table.errors[0][0]);
  CHECK(fs::exists(cache));
  auto out2 = run_convergence_study(*pc.study, opts);  // cache hit path
  CHECK(out2.table.errors == out1.table.errors);
  for (const auto& r : out1.reports) CHECK(r.all_ok());
}

TEST_CASE("single-level study leaves the rate column empty") {
  std::string cfg = R"(mode = study
model.name = nlwr
kernel.name = constant_downstream
kernel.eta = 0.1
grid.x_min = 0
grid.x_max = 1
grid.dx = 0.05
grid.t_end = 0.05
grid.lambda = 0.2
initial.pieces = 0.25 0.5 0.6
study.schemes = upwind
study.n_min = 0
study.n_max = 0
study.reference.scheme = godunov
study.reference.n = 2
)";
  auto path = write_temp("nlcl_study1.cfg", cfg);
  auto pc = parse_config(path);
  StudyOptions opts;
  auto out = run_convergence_study(*pc.study, opts);
  REQUIRE(out.table.rows.size() == 1);
  CHECK(!out.table.rates[0][0]);
  auto csv_path = (fs::temp_directory_path() / "nlcl_tab.csv").string();
  write_error_table_csv(csv_path, out.table);
  auto text = slurp(csv_path);
  CHECK(text.find("upwind_l1_error") != std::string::npos);
}
