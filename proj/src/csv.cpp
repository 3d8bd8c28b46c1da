#include "nlcl/csv.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace nlcl {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

}  // namespace

void write_solution_csv(const std::string& path, std::span<const double> x,
                        std::span<const double> rho) {
  if (x.size() != rho.size())
    throw std::invalid_argument("solution csv: x/rho size mismatch");
  auto os = open_out(path);
  os << "x,rho\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    os << format_double(x[i]) << "," << format_double(rho[i]) << "\n";
}

void write_solution_csv_with_header(const std::string& path,
                                    const std::string& header,
                                    std::span<const double> x,
                                    std::span<const double> rho) {
  auto os = open_out(path);
  os << "# " << header << "\n";
  os << "x,rho\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    os << format_double(x[i]) << "," << format_double(rho[i]) << "\n";
}

namespace {

// std::stod rejects subnormal magnitudes; from_chars round-trips everything
// format_double can emit
double parse_double_field(const char* first, const char* last,
                          const std::string& path) {
  double v = 0.0;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    throw std::runtime_error("malformed number in " + path + ": " +
                             std::string(first, last));
  return v;
}

}  // namespace

std::string read_solution_csv(const std::string& path, std::vector<double>& x,
                              std::vector<double>& rho) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  x.clear();
  rho.clear();
  std::string line;
  std::string header;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      header = line.size() > 2 ? line.substr(2) : "";
      continue;
    }
    if (line.rfind("x,", 0) == 0) continue;  // column header
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("malformed csv line in " + path + ": " + line);
    const char* base = line.data();
    x.push_back(parse_double_field(base, base + comma, path));
    rho.push_back(parse_double_field(base + comma + 1, base + line.size(), path));
  }
  return header;
}

void write_diagnostics_csv(const std::string& path, const RunReport& report) {
  auto os = open_out(path);
  os << "t,min,max,l1,tv,tv_bound,entropy_violation_max\n";
  for (const auto& r : report.records) {
    os << format_double(r.t) << "," << format_double(r.min) << ","
       << format_double(r.max) << "," << format_double(r.l1) << ","
       << format_double(r.tv) << "," << format_double(r.tv_bound) << ","
       << format_double(r.entropy_violation_max) << "\n";
  }
}

void write_error_table_csv(const std::string& path, const ErrorTable& table) {
  auto os = open_out(path);
  os << "n,dx";
  for (const auto& s : table.schemes) os << "," << s << "_l1_error," << s << "_eoc";
  os << "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << table.rows[r].level << "," << format_double(table.rows[r].dx);
    for (std::size_t s = 0; s < table.schemes.size(); ++s) {
      os << "," << format_double(table.errors[r][s]) << ",";
      if (r < table.rates.size() && table.rates[r][s])
        os << format_double(*table.rates[r][s]);
    }
    os << "\n";
  }
}

void write_weights_csv(const std::string& path, const KernelWeights& w) {
  auto os = open_out(path);
  os << "k,gamma_k\n";
  for (std::size_t i = 0; i < w.weights.size(); ++i)
    os << w.k_min + static_cast<int>(i) << "," << format_double(w.weights[i])
       << "\n";
  os << "sum," << format_double(w.weight_sum) << "\n";
}

std::string render_error_table(const ErrorTable& table) {
  std::ostringstream os;
  os << "reference: " << table.reference_desc << "\n";
  os << std::left << std::setw(4) << "n" << std::setw(12) << "dx";
  for (const auto& s : table.schemes)
    os << std::setw(16) << (s + "_err") << std::setw(10) << "eoc";
  os << "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << std::left << std::setw(4) << table.rows[r].level << std::setw(12)
       << table.rows[r].dx;
    for (std::size_t s = 0; s < table.schemes.size(); ++s) {
      std::ostringstream e;
      e << std::setprecision(5) << table.errors[r][s];
      os << std::setw(16) << e.str();
      if (r < table.rates.size() && table.rates[r][s]) {
        std::ostringstream rr;
        rr << std::setprecision(4) << *table.rates[r][s];
        os << std::setw(10) << rr.str();
      } else {
        os << std::setw(10) << "-";
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace nlcl
