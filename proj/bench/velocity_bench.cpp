// Timing harness for the nonlocal velocity paths (serial dot product,
// OpenMP direct, sliding moments) and for full solver steps. The serial path
// is the reference; the table reports speedups and the worst deviation.
#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "nlcl/solver.hpp"

using namespace nlcl;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

struct Timing {
  double seconds;
  double max_dev;
};

Timing time_path(const VelocityEvaluator& eval,
                 const std::vector<double>& padded, int pad, int n, int reps,
                 const std::vector<double>& reference) {
  std::vector<double> out(static_cast<std::size_t>(n));
  double t0 = now();
  for (int r = 0; r < reps; ++r) eval(padded, pad, -1, out);
  double dt = (now() - t0) / reps;
  double dev = 0.0;
  for (int i = 0; i < n; ++i)
    dev = std::max(dev, std::abs(out[static_cast<std::size_t>(i)] -
                                 reference[static_cast<std::size_t>(i)]));
  return {dt, dev};
}

}  // namespace

int main(int argc, char** argv) {
  bool full = argc > 1 && std::string(argv[1]) == "--full";
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(0.0, 0.8);

  struct Case {
    int cells;
    double eta_over_dx;
  };
  std::vector<Case> cases = {{4096, 64}, {8192, 256}, {20480, 1024}};
  if (full) cases.push_back({20480, 5120});

  std::printf("%-10s %-8s %12s %12s %12s %10s %10s\n", "cells", "window",
              "serial(s)", "direct(s)", "sliding(s)", "dir_dev", "sli_dev");
  for (auto [n, ratio] : cases) {
    double dx = 1.0 / ratio;
    auto kernel = Kernel::make("parabolic_symmetric", 0.5);  // window 2*ratio
    auto w = compute_weights(kernel, dx);
    int pad = static_cast<int>(w.weights.size()) + 2;
    std::vector<double> padded(static_cast<std::size_t>(n + 2 * pad));
    for (auto& x : padded) x = dist(rng);

    VelocityEvaluator serial(ScalarFunc::one_minus_pow(4), kernel, w, dx,
                             VelocityPath::serial);
    VelocityEvaluator direct(ScalarFunc::one_minus_pow(4), kernel, w, dx,
                             VelocityPath::direct);
    VelocityEvaluator sliding(ScalarFunc::one_minus_pow(4), kernel, w, dx,
                              VelocityPath::sliding);

    std::vector<double> ref(static_cast<std::size_t>(n));
    serial(padded, pad, -1, ref);
    int reps = std::max(1, 2000000 / (n * static_cast<int>(w.weights.size()) / 64));
    Timing ts = time_path(serial, padded, pad, n, std::max(1, reps / 4), ref);
    Timing td = time_path(direct, padded, pad, n, reps, ref);
    Timing tl = time_path(sliding, padded, pad, n, reps * 8, ref);
    std::printf("%-10d %-8zu %12.3e %12.3e %12.3e %10.2e %10.2e\n", n,
                w.weights.size(), ts.seconds, td.seconds, tl.seconds, td.max_dev,
                tl.max_dev);
  }

  // full step throughput on a representative setup
  {
    auto model = make_model_spec(model_registry("sedimentation"), {0.0, 0.6});
    auto kernel = Kernel::make("parabolic_symmetric", 1.0);
    double dx = 8.0 / 4096;
    auto w = compute_weights(kernel, dx);
    GridSpec grid{-2.0, 6.0, dx, 0.0, 0.2, Boundary::outflow_constant};
    SolverState state{0.0, 0,
                      std::vector<double>(static_cast<std::size_t>(grid.cell_count()), 0.0)};
    for (int j = grid.cell_count() / 2; j < grid.cell_count(); ++j)
      state.cells[static_cast<std::size_t>(j)] = 0.6;
    StepScratch scratch;
    for (const char* name : {"godunov", "lax_friedrichs_classic"}) {
      Stepper stepper(model, kernel, w, {name, {}}, grid);
      SolverState s = state;
      int reps = 200;
      double t0 = now();
      for (int r = 0; r < reps; ++r) stepper.advance(s, 0.2, scratch);
      std::printf("step %-24s %d cells: %10.3e s/step\n", name,
                  grid.cell_count(), (now() - t0) / reps);
    }
  }
  return 0;
}
