#ifndef NLCL_GRID_HPP
#define NLCL_GRID_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nlcl {

enum class Boundary { outflow_constant, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& s);

/// Uniform space-time grid description. lambda is the step ratio dt/dx.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double dx = 0.1;
  double t_end = 0.0;
  double lambda = 0.0;
  Boundary boundary = Boundary::outflow_constant;

  int cell_count() const;
  double cell_left(int j) const { return x_min + j * dx; }
  double cell_center(int j) const { return x_min + (j + 0.5) * dx; }
  /// Throws if dx <= 0, lambda <= 0 or (x_max-x_min)/dx is not an integer
  /// (tolerance 1e-9).
  void validate() const;
};

struct SolverState {
  double time = 0.0;
  std::int64_t step_index = 0;
  std::vector<double> cells;
};

}  // namespace nlcl

#endif
