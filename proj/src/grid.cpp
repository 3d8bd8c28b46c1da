#include "nlcl/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nlcl {

std::string to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "outflow_constant";
}

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "outflow_constant") return Boundary::outflow_constant;
  throw std::invalid_argument("unknown boundary policy: " + s);
}

int GridSpec::cell_count() const {
  return static_cast<int>(std::llround((x_max - x_min) / dx));
}

void GridSpec::validate() const {
  if (!(dx > 0.0)) throw std::invalid_argument("grid: dx must be positive");
  if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max <= x_min");
  double ratio = (x_max - x_min) / dx;
  if (std::abs(ratio - std::llround(ratio)) > 1e-9)
    throw std::invalid_argument("grid: (x_max-x_min)/dx is not an integer");
  if (!(lambda > 0.0)) throw std::invalid_argument("grid: lambda must be positive");
  if (t_end < 0.0) throw std::invalid_argument("grid: t_end must be nonnegative");
}

}  // namespace nlcl
