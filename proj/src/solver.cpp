#include "nlcl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlcl {

std::vector<std::string> SchemeSpec::known_names() {
  return {"lax_friedrichs", "godunov", "engquist_osher", "upwind",
          "lax_friedrichs_classic"};
}

double cfl_max_lambda(const SchemeConstants& c, double gamma0,
                      const ModelSpec& model) {
  if (!(gamma0 >= 0.0 && gamma0 <= 1.0))
    throw std::invalid_argument("cfl_max_lambda: gamma0 outside [0,1]");
  double denom = c.norm_g_flux * model.bound_dv * gamma0 + c.l1 + c.l2;
  if (!(denom > 0.0))
    throw std::invalid_argument("cfl_max_lambda: zero denominator");
  return 1.0 / denom;
}

namespace {

FluxKind flux_kind_from_name(const std::string& name) {
  if (name == "lax_friedrichs") return FluxKind::lax_friedrichs;
  if (name == "godunov") return FluxKind::godunov;
  if (name == "engquist_osher") return FluxKind::engquist_osher;
  if (name == "upwind") return FluxKind::upwind;
  throw std::invalid_argument("unknown scheme: " + name);
}

}  // namespace

Stepper::Stepper(const ModelSpec& model, const Kernel& kernel,
                 const KernelWeights& weights, const SchemeSpec& scheme,
                 const GridSpec& grid, VelocityPath velocity_path)
    : model_(model),
      grid_(grid),
      classic_(scheme.is_classic_variant()),
      flux_(FluxScheme::make(classic_ ? FluxKind::lax_friedrichs
                                      : flux_kind_from_name(scheme.name),
                             model, scheme.alpha)),
      vel_(model.v, kernel, weights, grid.dx, velocity_path) {
  grid_.validate();
  // The classic variant borrows the Lax-Friedrichs closed forms as
  // surrogate constants for the diagnostic inequalities, but its stability
  // domain is the classical one, lambda * alpha <= 1 (it sits outside the
  // factored-flux class, so the class CFL bound does not apply to it).
  constants_ = flux_->constants();
  alpha_ = constants_.alpha;
  max_lambda_ = classic_ ? 1.0 / alpha_
                         : cfl_max_lambda(constants_, weights.gamma0, model_);
  pad_ = std::max({1, -vel_.k_min(), vel_.k_max() + (classic_ ? 2 : 1)});
  if (grid_.boundary == Boundary::periodic && pad_ > grid_.cell_count())
    throw std::invalid_argument(
        "periodic boundary: kernel window exceeds the domain");
}

void Stepper::fill_padded(const SolverState& state,
                          std::vector<double>& padded) const {
  const int n = grid_.cell_count();
  if (static_cast<int>(state.cells.size()) != n)
    throw std::invalid_argument("state size does not match the grid");
  padded.resize(static_cast<std::size_t>(n + 2 * pad_));
  std::copy(state.cells.begin(), state.cells.end(), padded.begin() + pad_);
  if (grid_.boundary == Boundary::outflow_constant) {
    std::fill(padded.begin(), padded.begin() + pad_, state.cells.front());
    std::fill(padded.end() - pad_, padded.end(), state.cells.back());
  } else {
    for (int i = 0; i < pad_; ++i) {
      padded[static_cast<std::size_t>(i)] =
          state.cells[static_cast<std::size_t>((n - pad_ + i % n + n) % n)];
      padded[static_cast<std::size_t>(n + pad_ + i)] =
          state.cells[static_cast<std::size_t>(i % n)];
    }
  }
}

void Stepper::advance(SolverState& state, double lambda_step,
                      StepScratch& scratch) const {
  const int n = grid_.cell_count();
  fill_padded(state, scratch.padded);
  const double* rho = scratch.padded.data() + pad_;

  const int nv = velocity_count();
  scratch.velocities.resize(static_cast<std::size_t>(nv));
  vel_(scratch.padded, pad_, -1, scratch.velocities);
  const double* V = scratch.velocities.data();  // V[i] = V_{i-1}

  if (!classic_ && !flux_->sign_agnostic()) {
    for (int i = 0; i < nv; ++i)
      if (V[i] < 0.0) {
        std::ostringstream os;
        os << flux_->name() << ": negative nonlocal velocity " << V[i]
           << " at interface " << i - 1 << "+1/2";
        throw std::domain_error(os.str());
      }
  }

  scratch.fluxes.resize(static_cast<std::size_t>(n + 1));
  double* F = scratch.fluxes.data();
  if (classic_) {
    const ScalarFunc& g = model_.g;
    const double alpha = alpha_;
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) {
      double a = rho[i - 1], b = rho[i];
      F[i] = 0.5 * (g(a) * V[i] + g(b) * V[i + 1] + alpha * (a - b));
    }
  } else {
    const FluxScheme& flux = *flux_;
#pragma omp parallel for schedule(static)
    for (int i = 0; i <= n; ++i) {
      F[i] = flux.reduced(rho[i - 1], rho[i]) * V[i];
    }
  }

  double* cells = state.cells.data();
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    cells[j] -= lambda_step * (F[j + 1] - F[j]);
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(cells[j])) {
      std::ostringstream os;
      os << "step produced a non-finite value at cell " << j << " (t="
         << state.time << ")";
      throw std::runtime_error(os.str());
    }
  }
  state.time += lambda_step * grid_.dx;
  state.step_index += 1;
}

RunResult run(const ModelSpec& model, const Kernel& kernel,
              const KernelWeights& weights, const SchemeSpec& scheme,
              const GridSpec& grid, const InitialData& initial,
              const RunOptions& opts) {
  GridSpec g = grid;
  g.validate();
  Stepper stepper(model, kernel, weights, scheme, g, opts.velocity_path);

  if (g.lambda > stepper.max_lambda() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "lambda=" << g.lambda << " exceeds the CFL bound "
       << stepper.max_lambda() << " for scheme " << scheme.name;
    if (opts.strict_cfl) throw std::invalid_argument(os.str());
    if (opts.warnings) *opts.warnings << "warning: " << os.str() << "\n";
  }

  RunResult res;
  res.state.time = 0.0;
  res.state.step_index = 0;
  res.state.cells = project_initial_data(initial, g);

  const double dt = g.lambda * g.dx;
  auto n_full = static_cast<std::int64_t>(std::floor(g.t_end / dt + 1e-9));
  double remainder = g.t_end - static_cast<double>(n_full) * dt;
  if (remainder < 1e-12 * std::max(dt, 1.0)) remainder = 0.0;

  StepScratch scratch;
  SolverState prev;
  const bool watch = static_cast<bool>(opts.on_step);
  for (std::int64_t s = 0; s < n_full; ++s) {
    if (watch) prev = res.state;
    stepper.advance(res.state, g.lambda, scratch);
    res.state.time = static_cast<double>(s + 1) * dt;  // no accumulation drift
    ++res.steps;
    if (watch && !opts.on_step(prev, res.state, scratch, g.lambda)) {
      res.aborted = true;
      return res;
    }
  }
  if (remainder > 0.0) {
    if (watch) prev = res.state;
    stepper.advance(res.state, remainder / g.dx, scratch);
    res.state.time = g.t_end;
    ++res.steps;
    if (watch &&
        !opts.on_step(prev, res.state, scratch, remainder / g.dx)) {
      res.aborted = true;
      return res;
    }
  }
  res.state.time = g.t_end;
  return res;
}

}  // namespace nlcl
