#ifndef NLCL_CSV_HPP
#define NLCL_CSV_HPP

#include <span>
#include <string>
#include <vector>

#include "nlcl/diagnostics.hpp"
#include "nlcl/quadrature.hpp"

namespace nlcl {

/// Shortest representation that round-trips the double (17 significant
/// digits at most); the backbone of byte-deterministic outputs.
std::string format_double(double v);

/// Columns: x, rho.
void write_solution_csv(const std::string& path, std::span<const double> x,
                        std::span<const double> rho);

/// First line "# <header>", then columns x, rho. Returns the header.
std::string read_solution_csv(const std::string& path, std::vector<double>& x,
                              std::vector<double>& rho);
void write_solution_csv_with_header(const std::string& path,
                                    const std::string& header,
                                    std::span<const double> x,
                                    std::span<const double> rho);

/// Columns: t, min, max, l1, tv, tv_bound, entropy_violation_max.
void write_diagnostics_csv(const std::string& path, const RunReport& report);

/// Columns: n, dx, then per scheme <name>_l1_error, <name>_eoc.
void write_error_table_csv(const std::string& path, const ErrorTable& table);

/// Columns: k, gamma_k; final summary row "sum,<weight_sum>".
void write_weights_csv(const std::string& path, const KernelWeights& w);

std::string render_error_table(const ErrorTable& table);  // console form

}  // namespace nlcl

#endif
