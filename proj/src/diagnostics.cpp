#include "nlcl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nlcl {

double total_variation(std::span<const double> cells, Boundary boundary) {
  if (cells.size() < 2)
    throw std::invalid_argument("total_variation: need at least 2 cells");
  double tv = 0.0;
  for (std::size_t j = 1; j < cells.size(); ++j)
    tv += std::abs(cells[j] - cells[j - 1]);
  if (boundary == Boundary::periodic)
    tv += std::abs(cells.front() - cells.back());
  return tv;
}

double tv_bound(double t, const ModelSpec& model, const Kernel& kernel,
                double tv0) {
  double nrho = std::max(std::abs(model.interval.lo), std::abs(model.interval.hi));
  double rate = kernel.omega_at_zero() *
                (model.bound_dv * (2.0 * model.bound_g + model.bound_dg * nrho) +
                 2.0 * model.bound_ddv * model.bound_g * nrho);
  return std::exp(t * rate) * tv0;
}

EntropyResidual entropy_residual_core(std::span<const double> prev_padded,
                                      int center,
                                      std::span<const double> next,
                                      std::span<const double> velocities,
                                      double lambda_step,
                                      const FluxScheme& scheme,
                                      const ScalarFunc& g, double k) {
  const int n = static_cast<int>(next.size());
  const double* rho = prev_padded.data() + center;
  const double* V = velocities.data();  // V[i] = V_{i-1}
  const double gk = g(k);
  EntropyResidual out{-1e300, -1e300};
  for (int j = 0; j < n; ++j) {
    double fk_right = kruzkov_entropy_flux(scheme, rho[j], rho[j + 1], k, V[j + 1]);
    double fk_left = kruzkov_entropy_flux(scheme, rho[j - 1], rho[j], k, V[j]);
    double d_next = next[static_cast<std::size_t>(j)] - k;
    double sgn = d_next > 0.0 ? 1.0 : (d_next < 0.0 ? -1.0 : 0.0);
    double base = std::abs(d_next) - std::abs(rho[j] - k) +
                  lambda_step * (fk_right - fk_left);
    double coupling = lambda_step * sgn * gk * (V[j + 1] - V[j]);
    out.factor_lambda = std::max(out.factor_lambda, base + coupling);
    out.factor_half = std::max(out.factor_half, base + 0.5 * coupling);
  }
  return out;
}

EntropyResidual entropy_residual(const SolverState& prev,
                                 const SolverState& next, double k,
                                 const FluxScheme& scheme,
                                 const KernelWeights& weights,
                                 const ModelSpec& model, const Kernel& kernel,
                                 const GridSpec& grid) {
  if (next.step_index != prev.step_index + 1)
    throw std::invalid_argument("entropy_residual: states are not one step apart");
  SchemeSpec spec{scheme.name(),
                  scheme.kind() == FluxKind::lax_friedrichs
                      ? std::optional<double>(scheme.alpha())
                      : std::nullopt};
  Stepper stepper(model, kernel, weights, spec, grid, VelocityPath::direct);
  StepScratch scratch;
  stepper.fill_padded(prev, scratch.padded);
  scratch.velocities.resize(static_cast<std::size_t>(stepper.velocity_count()));
  stepper.velocity()(scratch.padded, stepper.pad(), -1, scratch.velocities);
  return entropy_residual_core(scratch.padded, stepper.pad(), next.cells,
                               scratch.velocities, grid.lambda, scheme,
                               model.g, k);
}

std::vector<double> entropy_k_grid(double rho_m, double rho_M) {
  std::vector<double> ks;
  if (!(rho_M > rho_m)) return ks;
  ks.push_back(rho_m + 0.05);
  for (double k = std::ceil(rho_m * 10.0 + 1e-9) / 10.0; k < rho_M - 1e-12;
       k += 0.1) {
    if (k > rho_m + 1e-12) ks.push_back(k);
  }
  ks.push_back(rho_M - 0.05);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-9; }),
           ks.end());
  return ks;
}

double l1_error(std::span<const double> coarse, std::span<const double> fine,
                int ratio, double dx_coarse) {
  if (ratio < 1 || fine.size() != coarse.size() * static_cast<std::size_t>(ratio))
    throw std::invalid_argument(
        "l1_error: reference grid is not a nested refinement of the coarse grid");
  double acc = 0.0;
  const double inv = 1.0 / ratio;
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    double avg = 0.0;
    for (int r = 0; r < ratio; ++r)
      avg += fine[j * static_cast<std::size_t>(ratio) + static_cast<std::size_t>(r)];
    acc += std::abs(coarse[j] - avg * inv);
  }
  return dx_coarse * acc;
}

std::vector<std::optional<double>> eoc(const std::vector<double>& errors) {
  if (errors.size() < 2)
    throw std::invalid_argument("eoc: need at least two errors");
  std::vector<std::optional<double>> rates(errors.size());
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i - 1] > 0.0 && errors[i] > 0.0)
      rates[i] = std::log2(errors[i - 1] / errors[i]);
  }
  return rates;
}

bool RunReport::all_ok() const {
  return max_principle_failures == 0 && conservation_failures == 0 &&
         tv_failures == 0 && time_continuity_failures == 0 &&
         velocity_bounds_failures == 0 && entropy_failures == 0;
}

std::string RunReport::summary() const {
  std::ostringstream os;
  os << "scheme=" << scheme << " dx=" << dx << " steps=" << steps
     << " max_principle_failures=" << max_principle_failures
     << " conservation_failures=" << conservation_failures
     << " tv_failures=" << tv_failures
     << " time_continuity_failures=" << time_continuity_failures
     << " velocity_bounds_failures=" << velocity_bounds_failures
     << " entropy_failures=" << entropy_failures;
  return os.str();
}

InvariantChecker::InvariantChecker(const Stepper& stepper, const Kernel& kernel,
                                   const KernelWeights& weights,
                                   std::span<const double> initial_cells,
                                   CheckerOptions opts)
    : stepper_(stepper), kernel_(kernel), opts_(std::move(opts)) {
  const auto [mn, mx] =
      std::minmax_element(initial_cells.begin(), initial_cells.end());
  rho_m_ = *mn;
  rho_M_ = *mx;
  weight_sum_ = weights.weight_sum;
  mass0_ = 0.0;
  for (double c : initial_cells) mass0_ += std::abs(c);
  mass0_ *= stepper.grid().dx;
  tv0_ = total_variation(initial_cells, stepper.grid().boundary);

  // Conservation only applies while the data cannot interact with the
  // boundary: the nonzero support must sit ||v|| t_end + 2 eta away from
  // both ends (finite-speed-of-propagation sizing rule).
  conservation_active_ = opts_.conservation;
  if (stepper.grid().boundary == Boundary::outflow_constant) {
    const auto& grid = stepper.grid();
    int first = -1, last = -1;
    for (int j = 0; j < static_cast<int>(initial_cells.size()); ++j) {
      if (initial_cells[static_cast<std::size_t>(j)] != 0.0) {
        if (first < 0) first = j;
        last = j;
      }
    }
    if (first >= 0) {
      double margin = stepper.model().bound_v * grid.t_end + 2.0 * kernel.eta();
      double left_gap = grid.cell_left(first) - grid.x_min;
      double right_gap = grid.x_max - grid.cell_left(last + 1);
      if (left_gap < margin || right_gap < margin) conservation_active_ = false;
    }
  }

  if (opts_.entropy && opts_.entropy_k.empty())
    opts_.entropy_k = entropy_k_grid(rho_m_, rho_M_);

  // The sharp interval is proved for the factored-flux class with
  // nonincreasing (downstream) weights; the symmetric-kernel model and the
  // comparison variant only guarantee the model range, and their solutions
  // genuinely overshoot the initial extremes (layering).
  report_.sharp_max_principle =
      !stepper.classic_variant() && kernel.downstream();
  report_.rho_m = rho_m_;
  report_.rho_M = rho_M_;
  report_.observed_min = rho_m_;
  report_.observed_max = rho_M_;

  report_.scheme = stepper.classic_variant()
                       ? "lax_friedrichs_classic"
                       : stepper.flux_scheme()->name();
  report_.model = stepper.model().name;
  report_.kernel = kernel.describe();
  report_.dx = stepper.grid().dx;
  report_.lambda = stepper.grid().lambda;
}

bool InvariantChecker::check(const SolverState& prev, const SolverState& next,
                             const StepScratch& scratch, double lambda_step) {
  const auto& grid = stepper_.grid();
  const auto& model = stepper_.model();
  const int n = grid.cell_count();
  StepRecord rec;
  rec.t = next.time;

  auto [mn, mx] = std::minmax_element(next.cells.begin(), next.cells.end());
  rec.min = *mn;
  rec.max = *mx;
  report_.observed_min = std::min(report_.observed_min, rec.min);
  report_.observed_max = std::max(report_.observed_max, rec.max);
  bool sharp_ok = rec.min >= rho_m_ - 1e-12 && rec.max <= rho_M_ + 1e-12;
  if (!sharp_ok) report_.sharp_overshoot_steps += 1;
  if (report_.sharp_max_principle) {
    rec.max_principle_ok = sharp_ok;
  } else {
    rec.max_principle_ok = rec.min >= std::min(0.0, rho_m_) - 1e-12 &&
                           rec.max <= std::max(1.0, rho_M_) + 1e-12;
  }

  rec.l1 = 0.0;
  for (double c : next.cells) rec.l1 += std::abs(c);
  rec.l1 *= grid.dx;
  rec.conservation_ok = !conservation_active_ ||
                        std::abs(rec.l1 - mass0_) <= 1e-11 * std::max(mass0_, 1e-30);

  rec.tv = total_variation(next.cells, grid.boundary);
  rec.tv_bound = tv_bound(next.time, model, kernel_, tv0_);
  rec.tv_ok = rec.tv <= rec.tv_bound * (1.0 + 1e-12) + 1e-12;

  double lhs = 0.0;
  for (int j = 0; j < n; ++j)
    lhs += std::abs(next.cells[static_cast<std::size_t>(j)] -
                    prev.cells[static_cast<std::size_t>(j)]);
  lhs *= grid.dx;
  const auto& c = stepper_.constants();
  double dt = lambda_step * grid.dx;
  double rhs = dt * (c.norm_g_flux * model.bound_dv + c.l1 + c.l2) *
               total_variation(prev.cells, grid.boundary);
  rec.time_continuity_lhs = lhs;
  rec.time_continuity_rhs = rhs;
  rec.time_continuity_ok = lhs <= rhs + 1e-10;

  // = v(rho_m) for full kernels; the comparison variant is held to the wide
  // range matching its relaxed maximum principle
  double v_hi = report_.sharp_max_principle
                    ? model.v(weight_sum_ * rho_m_)
                    : model.v(weight_sum_ * std::min(0.0, rho_m_));
  double v_lo = report_.sharp_max_principle ? model.v(rho_M_)
                                            : model.v(std::max(1.0, rho_M_));
  rec.velocity_bounds_ok = true;
  for (double V : scratch.velocities) {
    if (V < v_lo - 1e-13 || V > v_hi + 1e-13) {
      rec.velocity_bounds_ok = false;
      break;
    }
  }

  rec.entropy_violation_max = 0.0;
  rec.entropy_violation_max_half = 0.0;
  if (opts_.entropy && !stepper_.classic_variant()) {
    EntropyResidual worst{-1e300, -1e300};
    auto probe = [&](double k) {
      EntropyResidual r = entropy_residual_core(
          scratch.padded, stepper_.pad(), next.cells, scratch.velocities,
          lambda_step, *stepper_.flux_scheme(), model.g, k);
      worst.factor_lambda = std::max(worst.factor_lambda, r.factor_lambda);
      worst.factor_half = std::max(worst.factor_half, r.factor_half);
    };
    for (double k : opts_.entropy_k) probe(k);
    if (opts_.entropy_random_k_per_step > 0 && rho_M_ > rho_m_) {
      std::uniform_real_distribution<double> dist(rho_m_, rho_M_);
      for (int i = 0; i < opts_.entropy_random_k_per_step; ++i) probe(dist(rng_));
    }
    rec.entropy_violation_max = worst.factor_lambda;
    rec.entropy_violation_max_half = worst.factor_half;
    rec.entropy_ok = worst.factor_lambda <= 1e-12;
    report_.worst_entropy_residual =
        std::max(report_.worst_entropy_residual, worst.factor_lambda);
    report_.worst_entropy_residual_half =
        std::max(report_.worst_entropy_residual_half, worst.factor_half);
  }

  report_.steps += 1;
  report_.max_principle_failures += rec.max_principle_ok ? 0 : 1;
  report_.conservation_failures += rec.conservation_ok ? 0 : 1;
  report_.tv_failures += rec.tv_ok ? 0 : 1;
  report_.time_continuity_failures += rec.time_continuity_ok ? 0 : 1;
  report_.velocity_bounds_failures += rec.velocity_bounds_ok ? 0 : 1;
  report_.entropy_failures += rec.entropy_ok ? 0 : 1;
  bool ok = rec.max_principle_ok && rec.conservation_ok && rec.tv_ok &&
            rec.time_continuity_ok && rec.velocity_bounds_ok && rec.entropy_ok;
  if (opts_.keep_records) report_.records.push_back(rec);
  return ok;
}

void ErrorTable::compute_rates() {
  rates.assign(rows.size(), std::vector<std::optional<double>>(schemes.size()));
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    for (std::size_t r = 1; r < rows.size(); ++r) {
      double e0 = errors[r - 1][s], e1 = errors[r][s];
      if (e0 > 0.0 && e1 > 0.0) rates[r][s] = std::log2(e0 / e1);
    }
  }
}

}  // namespace nlcl
