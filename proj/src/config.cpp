#include "nlcl/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "nlcl/csv.hpp"

namespace nlcl {

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class KeyMap {
public:
  KeyMap(const std::string& path, std::vector<std::string>& errors)
      : errors_(errors) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) {
        err(lineno, "expected 'key = value'");
        continue;
      }
      std::string key = trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      if (key.empty()) {
        err(lineno, "empty key");
        continue;
      }
      if (map_.count(key)) {
        err(lineno, "duplicate key '" + key + "'");
        continue;
      }
      map_[key] = Entry{value, lineno, false};
    }
  }

  bool has(const std::string& key) const { return map_.count(key) != 0; }

  std::optional<std::string> get(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  std::string require(const std::string& key) {
    auto v = get(key);
    if (!v) {
      errors_.push_back("missing required key '" + key + "'");
      return "";
    }
    return *v;
  }

  double get_double(const std::string& key, std::optional<double> fallback) {
    auto v = fallback ? get(key) : std::optional<std::string>(require(key));
    if (!v || v->empty()) return fallback.value_or(0.0);
    try {
      if (*v == "inf") return std::numeric_limits<double>::infinity();
      if (*v == "-inf") return -std::numeric_limits<double>::infinity();
      std::size_t pos = 0;
      double d = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing characters");
      return d;
    } catch (const std::exception&) {
      err_key(key, "not a number: '" + *v + "'");
      return fallback.value_or(0.0);
    }
  }

  int get_int(const std::string& key, std::optional<int> fallback) {
    double d = get_double(key, fallback ? std::optional<double>(*fallback)
                                        : std::nullopt);
    if (d != std::floor(d)) err_key(key, "not an integer");
    return static_cast<int>(d);
  }

  std::vector<double> get_doubles(const std::string& value,
                                  const std::string& key) {
    std::vector<double> out;
    std::istringstream is(value);
    std::string tok;
    while (is >> tok) {
      try {
        if (tok == "inf")
          out.push_back(std::numeric_limits<double>::infinity());
        else if (tok == "-inf")
          out.push_back(-std::numeric_limits<double>::infinity());
        else
          out.push_back(std::stod(tok));
      } catch (const std::exception&) {
        err_key(key, "not a number: '" + tok + "'");
      }
    }
    return out;
  }

  void err(int line, const std::string& msg) {
    errors_.push_back("line " + std::to_string(line) + ": " + msg);
  }
  void err_key(const std::string& key, const std::string& msg) {
    auto it = map_.find(key);
    std::string loc = it != map_.end() ? "line " + std::to_string(it->second.line)
                                       : std::string("config");
    errors_.push_back(loc + ", key '" + key + "': " + msg);
  }

  void finish() {
    for (const auto& [key, e] : map_) {
      if (!e.used)
        errors_.push_back("line " + std::to_string(e.line) + ": unknown key '" +
                          key + "'");
    }
  }

private:
  std::map<std::string, Entry> map_;
  std::vector<std::string>& errors_;
};

// Scheme tokens may carry an inline diffusion parameter, "name@alpha".
SchemeSpec parse_scheme_name(const std::string& token,
                             std::optional<double> alpha,
                             std::vector<std::string>& errors) {
  std::string name = token;
  if (auto at = token.find('@'); at != std::string::npos) {
    name = token.substr(0, at);
    try {
      alpha = std::stod(token.substr(at + 1));
    } catch (const std::exception&) {
      errors.push_back("bad alpha in scheme token '" + token + "'");
    }
  }
  auto known = SchemeSpec::known_names();
  if (std::find(known.begin(), known.end(), name) == known.end()) {
    errors.push_back("unknown scheme '" + name + "' (known: " +
                     join(known, ", ") + ")");
  }
  bool lxf_family = name == "lax_friedrichs" || name == "lax_friedrichs_classic";
  if (alpha && !lxf_family) {
    errors.push_back("scheme '" + name + "' takes no diffusion parameter");
    alpha = std::nullopt;
  }
  return SchemeSpec{name, alpha};
}

}  // namespace

config_error::config_error(const std::vector<std::string>& messages)
    : std::runtime_error("config errors:\n  " + join(messages, "\n  ")),
      messages_(messages) {}

std::string canonical_run_string(const ModelFunctions& fns,
                                 const std::string& kernel_family, double eta,
                                 const SchemeSpec& scheme, const GridSpec& grid,
                                 const InitialData& initial) {
  std::ostringstream os;
  os << "model=" << fns.name << ":g=" << fns.g.describe()
     << ":v=" << fns.v.describe() << "|kernel=" << kernel_family
     << ":eta=" << format_double(eta) << "|scheme=" << scheme.name;
  if (scheme.alpha) os << ":alpha=" << format_double(*scheme.alpha);
  os << "|grid=" << format_double(grid.x_min) << "," << format_double(grid.x_max)
     << ",dx=" << format_double(grid.dx) << ",T=" << format_double(grid.t_end)
     << ",lambda=" << format_double(grid.lambda) << ","
     << to_string(grid.boundary) << "|initial=" << initial.describe();
  return os.str();
}

ParsedConfig parse_config(const std::string& path) {
  std::vector<std::string> errors;
  KeyMap kv(path, errors);

  ParsedConfig out;
  out.mode = kv.require("mode");
  if (out.mode != "run" && out.mode != "study" && out.mode != "compare") {
    if (!out.mode.empty())
      errors.push_back("mode must be run, study or compare (got '" + out.mode +
                       "')");
    throw config_error(errors.empty()
                           ? std::vector<std::string>{"missing required key "
                                                      "'mode'"}
                           : errors);
  }

  RunConfig rc;

  // model
  std::string model_name = kv.require("model.name");
  if (model_name == "custom") {
    std::string raw = kv.require("model.g_coeffs");
    std::vector<double> coeffs = kv.get_doubles(raw, "model.g_coeffs");
    std::string vfam = kv.require("model.v");
    ScalarFunc v = ScalarFunc::one_minus_pow(1);
    if (vfam == "exp_neg") {
      v = ScalarFunc::exp_neg();
    } else if (vfam == "one_minus_pow") {
      int p = kv.get_int("model.v_power", std::nullopt);
      if (p >= 0) v = ScalarFunc::one_minus_pow(p);
    } else if (!vfam.empty()) {
      errors.push_back("model.v must be exp_neg or one_minus_pow");
    }
    std::optional<std::vector<double>> crit;
    if (auto c = kv.get("model.g_critical_points"))
      crit = kv.get_doubles(*c, "model.g_critical_points");
    if (coeffs.empty()) coeffs = {0.0};
    rc.model_fns = ModelFunctions{"custom", ScalarFunc::polynomial(coeffs),
                                  crit, v};
  } else if (!model_name.empty()) {
    try {
      rc.model_fns = model_registry(model_name);
    } catch (const std::exception& e) {
      kv.err_key("model.name", e.what());
    }
  }

  // kernel
  rc.kernel_family = kv.require("kernel.name");
  rc.eta = kv.get_double("kernel.eta", std::nullopt);
  if (!rc.kernel_family.empty() && rc.eta > 0.0) {
    try {
      (void)Kernel::make(rc.kernel_family, rc.eta);
    } catch (const std::exception& e) {
      kv.err_key("kernel.name", e.what());
    }
  } else if (rc.eta <= 0.0) {
    kv.err_key("kernel.eta", "must be positive");
  }

  // grid
  rc.grid.x_min = kv.get_double("grid.x_min", std::nullopt);
  rc.grid.x_max = kv.get_double("grid.x_max", std::nullopt);
  rc.grid.dx = kv.get_double("grid.dx", std::nullopt);
  rc.grid.t_end = kv.get_double("grid.t_end", std::nullopt);
  rc.lambda_given = kv.has("grid.lambda");
  rc.grid.lambda = kv.get_double("grid.lambda", 0.0);
  std::string bnd = kv.get("grid.boundary").value_or("outflow_constant");
  try {
    rc.grid.boundary = boundary_from_string(bnd);
  } catch (const std::exception& e) {
    kv.err_key("grid.boundary", e.what());
  }

  // initial data: comma-separated "lo hi value" triples
  {
    std::string raw = kv.require("initial.pieces");
    std::istringstream is(raw);
    std::string piece;
    while (std::getline(is, piece, ',')) {
      piece = trim(piece);
      if (piece.empty()) continue;
      std::vector<double> t = kv.get_doubles(piece, "initial.pieces");
      if (t.size() != 3) {
        kv.err_key("initial.pieces",
                   "each piece needs three numbers 'lo hi value'");
        continue;
      }
      rc.initial.pieces.push_back({t[0], t[1], t[2]});
    }
    rc.initial.default_value = kv.get_double("initial.default", 0.0);
    try {
      rc.initial.validate();
    } catch (const std::exception& e) {
      kv.err_key("initial.pieces", e.what());
    }
  }

  // solver
  if (auto v = kv.get("solver.velocity")) {
    try {
      rc.velocity = velocity_path_from_string(*v);
    } catch (const std::exception& e) {
      kv.err_key("solver.velocity", e.what());
    }
  }
  if (auto m = kv.get("solver.mode")) {
    if (*m == "strict")
      rc.strict = true;
    else if (*m == "permissive")
      rc.strict = false;
    else
      kv.err_key("solver.mode", "must be strict or permissive");
  }
  rc.entropy_diag = out.mode == "run";  // studies opt in explicitly
  if (auto e = kv.get("diagnostics.entropy")) {
    if (*e == "on")
      rc.entropy_diag = true;
    else if (*e == "off")
      rc.entropy_diag = false;
    else
      kv.err_key("diagnostics.entropy", "must be on or off");
  }

  // outputs
  rc.solution_csv = kv.get("output.solution_csv").value_or("solution.csv");
  rc.diagnostics_csv =
      kv.get("output.diagnostics_csv").value_or("diagnostics.csv");
  rc.svg_path = kv.get("output.svg").value_or("");
  rc.verbosity = kv.get("output.verbosity").value_or("summary");
  if (rc.verbosity != "quiet" && rc.verbosity != "summary" &&
      rc.verbosity != "per_step")
    kv.err_key("output.verbosity", "must be quiet, summary or per_step");

  std::optional<double> scheme_alpha;
  if (kv.has("scheme.alpha"))
    scheme_alpha = kv.get_double("scheme.alpha", 0.0);

  auto parse_scheme_list = [&](const std::string& raw) {
    std::vector<SchemeSpec> list;
    std::istringstream is(raw);
    std::string name;
    while (is >> name) list.push_back(parse_scheme_name(name, scheme_alpha, errors));
    if (list.empty()) errors.push_back("empty scheme list");
    return list;
  };

  if (out.mode == "run") {
    std::string sname = kv.require("scheme.name");
    if (!sname.empty()) rc.scheme = parse_scheme_name(sname, scheme_alpha, errors);
    kv.finish();
    if (!errors.empty()) throw config_error(errors);
    out.run = rc;
    return out;
  }

  if (out.mode == "study") {
    StudyConfig sc;
    sc.schemes = parse_scheme_list(kv.require("study.schemes"));
    sc.n_min = kv.get_int("study.n_min", 0);
    sc.n_max = kv.get_int("study.n_max", std::nullopt);
    std::string ref = kv.require("study.reference.scheme");
    std::optional<double> ref_alpha;
    if (kv.has("study.reference.alpha"))
      ref_alpha = kv.get_double("study.reference.alpha", 0.0);
    if (!ref.empty())
      sc.reference_scheme = parse_scheme_name(ref, ref_alpha ? ref_alpha : scheme_alpha, errors);
    sc.reference_n = kv.get_int("study.reference.n", std::nullopt);
    sc.table_csv = kv.get("output.table_csv").value_or("error_table.csv");
    if (sc.n_max < sc.n_min)
      errors.push_back("study.n_max must be >= study.n_min");
    if (sc.reference_n <= sc.n_max)
      errors.push_back("study.reference.n must exceed study.n_max "
                       "(reference strictly finer than all levels)");
    sc.base = rc;
    kv.finish();
    if (!errors.empty()) throw config_error(errors);
    out.study = std::move(sc);
    return out;
  }

  CompareConfig cc;
  cc.schemes = parse_scheme_list(kv.require("compare.schemes"));
  if (auto ref = kv.get("compare.reference.scheme")) {
    cc.reference_scheme = parse_scheme_name(*ref, scheme_alpha, errors);
    cc.reference_n = kv.get_int("compare.reference.n", std::nullopt);
    if (cc.reference_n < 1)
      errors.push_back("compare.reference.n must be >= 1");
  }
  cc.csv = kv.get("output.csv").value_or("compare.csv");
  cc.svg = kv.get("output.svg").value_or("compare.svg");
  cc.base = rc;
  kv.finish();
  if (!errors.empty()) throw config_error(errors);
  out.compare = std::move(cc);
  return out;
}

}  // namespace nlcl
