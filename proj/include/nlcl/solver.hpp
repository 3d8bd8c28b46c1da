#ifndef NLCL_SOLVER_HPP
#define NLCL_SOLVER_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "nlcl/flux.hpp"
#include "nlcl/grid.hpp"
#include "nlcl/model.hpp"
#include "nlcl/quadrature.hpp"
#include "nlcl/velocity.hpp"

namespace nlcl {

/// Scheme selector for the time stepper. The four FluxKind schemes share the
/// factored form G(a,b)*V_j; lax_friedrichs_classic is the conventional
/// comparison variant where each g term carries its own interface velocity,
///   F_{j+1/2} = (g(rho_j) V_j + g(rho_{j+1}) V_{j+1} + alpha (rho_j - rho_{j+1})) / 2,
/// which does not factor and is handled by a dedicated stencil.
struct SchemeSpec {
  std::string name;  // flux kind name or "lax_friedrichs_classic"
  std::optional<double> alpha;

  bool is_classic_variant() const { return name == "lax_friedrichs_classic"; }
  static std::vector<std::string> known_names();
};

/// lambda upper bound 1 / (||G|| ||v'|| gamma0 + L1 + L2).
double cfl_max_lambda(const SchemeConstants& c, double gamma0,
                      const ModelSpec& model);

struct StepScratch {
  std::vector<double> padded;      // densities with ghost cells
  std::vector<double> velocities;  // velocities[i] = V_{i-1+j_lo}, see Stepper
  std::vector<double> fluxes;      // fluxes[i] = F at interface i-1/2
};

/// Advances the conservative update
///   rho_j^{n+1} = rho_j^n - lambda (F_{j+1/2} - F_{j-1/2}).
/// Ghost cells implement the boundary policy (outflow extends the outermost
/// value across the kernel window; periodic wraps). Reusable across steps.
class Stepper {
public:
  Stepper(const ModelSpec& model, const Kernel& kernel,
          const KernelWeights& weights, const SchemeSpec& scheme,
          const GridSpec& grid,
          VelocityPath velocity_path = VelocityPath::automatic);

  /// One step with ratio lambda_step (usually grid.lambda; smaller for the
  /// final shortened step). Scratch holds the velocities and fluxes used.
  void advance(SolverState& state, double lambda_step, StepScratch& scratch) const;

  /// Velocities at interfaces j = -1 .. n-1 (interface count n+1), plus one
  /// extra V_n for the classic variant; fluxes at interfaces -1/2 .. n-1/2.
  int velocity_count() const { return grid_.cell_count() + 1 + (classic_ ? 1 : 0); }

  const SchemeConstants& constants() const { return constants_; }
  const FluxScheme* flux_scheme() const { return flux_ ? &*flux_ : nullptr; }
  const VelocityEvaluator& velocity() const { return vel_; }
  const GridSpec& grid() const { return grid_; }
  const ModelSpec& model() const { return model_; }
  double max_lambda() const { return max_lambda_; }
  bool classic_variant() const { return classic_; }

  /// Fills scratch.padded from state under the boundary policy.
  void fill_padded(const SolverState& state, std::vector<double>& padded) const;
  int pad() const { return pad_; }

private:
  ModelSpec model_;
  GridSpec grid_;
  bool classic_ = false;
  double alpha_ = 0.0;  // classic variant only
  std::optional<FluxScheme> flux_;
  SchemeConstants constants_;
  VelocityEvaluator vel_;
  double max_lambda_ = 0.0;
  int pad_ = 0;
};

struct RunOptions {
  bool strict_cfl = true;
  VelocityPath velocity_path = VelocityPath::automatic;
  /// Called after every step with (state before, state after, scratch,
  /// lambda used). Return false to abort the run.
  std::function<bool(const SolverState&, const SolverState&,
                     const StepScratch&, double)>
      on_step;
  std::ostream* warnings = nullptr;
};

struct RunResult {
  SolverState state;
  std::int64_t steps = 0;
  bool aborted = false;  // an on_step callback requested a stop
};

/// Integrates to grid.t_end; the last step is shortened so the final time is
/// exact. In strict mode a lambda above the CFL bound is an error; otherwise
/// it is a warning.
RunResult run(const ModelSpec& model, const Kernel& kernel,
              const KernelWeights& weights, const SchemeSpec& scheme,
              const GridSpec& grid, const InitialData& initial,
              const RunOptions& opts = {});

}  // namespace nlcl

#endif
