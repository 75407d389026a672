// Command-line front end: parameter sweeps, boundary tracing, scaling
// studies and finite-N validation runs over the shared library.
//
// Every subcommand accepts --config (key=value file) plus field overrides;
// flags win. Data files embed a deterministic manifest; a timestamped
// sidecar <output>.manifest is written alongside and is itself a valid
// --config file.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tdicke.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitNumeric = 4;
constexpr int kExitIo = 5;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

void check_status(td_status s) {
  if (s == TD_OK) return;
  const std::string msg = std::string(td_strerror(s)) + ": " + td_last_error();
  if (s == TD_ERR_DOMAIN || s == TD_ERR_CONFIG) fail(kExitDomain, msg);
  fail(kExitNumeric, msg);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV cell: empty for non-finite, never "inf"/"nan"
std::string cell(double v) { return std::isfinite(v) ? fmt(v) : std::string(); }

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

using Config = std::map<std::string, std::string>;

Config read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitIo, "cannot open config file: " + path);
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(kExitUsage, path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

double to_double(const Config& cfg, const std::string& key) {
  const auto& s = cfg.at(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(kExitUsage, "field '" + key + "': not a number: " + s);
  }
}

long to_long(const Config& cfg, const std::string& key) {
  const auto& s = cfg.at(key);
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(kExitUsage, "field '" + key + "': not an integer: " + s);
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_double_list(const Config& cfg, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(cfg.at(key))) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      fail(kExitUsage, "field '" + key + "': not a number: " + item);
    }
  }
  if (out.empty()) fail(kExitUsage, "field '" + key + "': empty list");
  return out;
}

// Defaults < config file < flags. Unknown config keys are usage errors.
Config resolve(const Config& defaults, const std::string& command,
               const std::string& config_path, const Config& flags) {
  Config cfg = defaults;
  if (!config_path.empty()) {
    for (const auto& [k, v] : read_config_file(config_path)) {
      if (k == "command") {
        if (v != command)
          fail(kExitUsage, "config file is for command '" + v + "', not '" + command + "'");
        continue;
      }
      if (!defaults.count(k)) fail(kExitUsage, "field '" + k + "': unknown key");
      cfg[k] = v;
    }
  }
  for (const auto& [k, v] : flags) cfg[k] = v;
  return cfg;
}

// deterministic manifest block: physics-affecting keys only, sorted
std::vector<std::pair<std::string, std::string>> manifest_entries(const Config& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : cfg) {
    if (k == "output" || k == "threads") continue;
    out.emplace_back(k, v);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitIo, "cannot open output file: " + path);
  out << content;
  if (!out) fail(kExitIo, "write failed: " + path);
}

void write_sidecar(const std::string& command, const Config& cfg) {
  const std::string path = cfg.at("output") + ".manifest";
  std::ostringstream os;
  const std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  os << "# generated " << stamp << " by tdicke " << td_version() << "\n";
  os << "command=" << command << "\n";
  for (const auto& [k, v] : cfg) os << k << "=" << v << "\n";
  write_file(path, os.str());
}

json manifest_json(const std::string& command, const Config& cfg) {
  json m;
  m["tool"] = "tdicke";
  m["version"] = td_version();
  m["command"] = command;
  json c;
  for (const auto& [k, v] : manifest_entries(cfg)) c[k] = v;
  m["config"] = c;
  return m;
}

std::string manifest_csv(const std::string& command, const Config& cfg) {
  std::ostringstream os;
  os << "# tdicke " << td_version() << " " << command << "\n";
  for (const auto& [k, v] : manifest_entries(cfg)) os << "# " << k << "=" << v << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double x, y, lambda;
  double z = 0, f = 0, gap = 0, entropy = 0, gamma = 0;
  int phase = 0;
  int divergent = 0;
};

int cmd_sweep(const std::string& config_path, const Config& flags) {
  const Config defaults = {
      {"x_min", "0"},      {"x_max", "0.9"},  {"x_count", "10"},
      {"y_min", "0.1"},    {"y_max", "3"},    {"y_count", "10"},
      {"lambda", "1"},     {"quantities", "z,f,gap,entropy,gamma,phase"},
      {"format", "csv"},   {"output", ""},    {"threads", "1"},
      {"seed", "12345"}};
  const Config cfg = resolve(defaults, "sweep", config_path, flags);
  if (cfg.at("output").empty()) fail(kExitUsage, "field 'output': required");
  const std::string format = cfg.at("format");
  if (format != "csv" && format != "json")
    fail(kExitUsage, "field 'format': must be csv or json");

  static const std::set<std::string> known = {"z", "f", "gap", "entropy", "gamma", "phase"};
  std::set<std::string> want;
  for (const auto& q : split_list(cfg.at("quantities"))) {
    if (!known.count(q)) fail(kExitUsage, "field 'quantities': unknown quantity " + q);
    want.insert(q);
  }
  if (want.empty()) fail(kExitUsage, "field 'quantities': must be non-empty");
  const bool need_fluct = want.count("gap") || want.count("entropy") || want.count("gamma");

  const long xc = to_long(cfg, "x_count"), yc = to_long(cfg, "y_count");
  if (xc < 1 || yc < 1) fail(kExitUsage, "field 'x_count'/'y_count': must be >= 1");
  const double x0 = to_double(cfg, "x_min"), x1 = to_double(cfg, "x_max");
  const double y0 = to_double(cfg, "y_min"), y1 = to_double(cfg, "y_max");
  const auto lambdas = to_double_list(cfg, "lambda");
  long threads = to_long(cfg, "threads");
  if (threads < 1) fail(kExitUsage, "field 'threads': must be >= 1");

  std::vector<SweepRow> rows;
  for (long i = 0; i < xc; ++i) {
    const double x = xc == 1 ? x0 : x0 + (x1 - x0) * i / (xc - 1);
    for (long k = 0; k < yc; ++k) {
      const double y = yc == 1 ? y0 : y0 + (y1 - y0) * k / (yc - 1);
      for (double l : lambdas) rows.push_back({x, y, l});
    }
  }

  std::mutex err_mutex;
  std::optional<CliError> first_error;
  auto worker = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < rows.size(); i += stride) {
      try {
        auto& r = rows[i];
        td_point p{r.x, r.y, r.lambda};
        td_meanfield mf;
        td_fluct fl;
        check_status(td_analyze_point(&p, &mf, need_fluct ? &fl : nullptr));
        r.z = mf.z;
        r.f = mf.energy;
        r.phase = mf.phase;
        if (need_fluct) {
          r.gap = fl.gap;
          r.entropy = fl.entropy;
          r.gamma = fl.gamma;
          r.divergent = fl.divergent;
        }
      } catch (const CliError& e) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = e;
        return;
      }
    }
  };
  threads = std::min(threads, static_cast<long>(rows.size()));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (long t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (auto& t : pool) t.join();
  }
  if (first_error) throw *first_error;

  std::string content;
  if (format == "csv") {
    std::ostringstream os;
    os << manifest_csv("sweep", cfg);
    os << "x,y,lambda,z,f,gap,entropy,gamma,phase,divergent\n";
    for (const auto& r : rows) {
      os << fmt(r.x) << "," << fmt(r.y) << "," << fmt(r.lambda) << ",";
      os << (want.count("z") ? cell(r.z) : "") << ",";
      os << (want.count("f") ? cell(r.f) : "") << ",";
      os << (want.count("gap") ? cell(r.gap) : "") << ",";
      os << (want.count("entropy") ? cell(r.entropy) : "") << ",";
      os << (want.count("gamma") ? cell(r.gamma) : "") << ",";
      os << (want.count("phase") ? (r.phase ? "superradiant" : "normal") : "") << ",";
      os << (need_fluct ? (r.divergent ? "true" : "false") : "") << "\n";
    }
    content = os.str();
  } else {
    json doc;
    doc["manifest"] = manifest_json("sweep", cfg);
    json data = json::array();
    for (const auto& r : rows) {
      json row;
      row["x"] = r.x;
      row["y"] = r.y;
      row["lambda"] = r.lambda;
      if (want.count("z")) row["z"] = jnum(r.z);
      if (want.count("f")) row["f"] = jnum(r.f);
      if (want.count("gap")) row["gap"] = jnum(r.gap);
      if (want.count("entropy")) row["entropy"] = jnum(r.entropy);
      if (want.count("gamma")) row["gamma"] = jnum(r.gamma);
      if (want.count("phase")) row["phase"] = r.phase ? "superradiant" : "normal";
      if (need_fluct) row["divergent"] = r.divergent != 0;
      data.push_back(row);
    }
    doc["data"] = data;
    content = doc.dump(2) + "\n";
  }
  write_file(cfg.at("output"), content);
  write_sidecar("sweep", cfg);
  return 0;
}

// ---------------------------------------------------------------------------
// boundary

int cmd_boundary(const std::string& config_path, const Config& flags) {
  const Config defaults = {{"x_min", "0"},     {"x_max", "0.9"}, {"count", "50"},
                           {"format", "json"}, {"output", ""},   {"threads", "1"},
                           {"seed", "12345"}};
  const Config cfg = resolve(defaults, "boundary", config_path, flags);
  if (cfg.at("output").empty()) fail(kExitUsage, "field 'output': required");
  const std::string format = cfg.at("format");
  if (format != "csv" && format != "json")
    fail(kExitUsage, "field 'format': must be csv or json");
  const long count = to_long(cfg, "count");
  if (count < 2) fail(kExitUsage, "field 'count': must be >= 2");
  const double x0 = to_double(cfg, "x_min"), x1 = to_double(cfg, "x_max");
  if (!(x0 >= 0.0 && x1 < 1.0 && x0 <= x1))
    fail(kExitUsage, "field 'x_min'/'x_max': require 0 <= x_min <= x_max < 1");

  const double qtp = td_qtp_x();
  std::vector<double> xs;
  for (long i = 0; i < count; ++i) xs.push_back(x0 + (x1 - x0) * i / (count - 1));
  if (x0 <= qtp && qtp <= x1) xs.push_back(qtp);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-14; }),
           xs.end());

  struct Traced {
    double x_c, y_c, z_jump;
    const char* order;
  };
  std::vector<Traced> trace;
  for (double x : xs) {
    if (x <= qtp + 1e-14) {
      const bool is_qtp = std::abs(x - qtp) < 1e-12;
      double y = 0.0;
      check_status(td_critical_line(std::min(x, qtp), &y));
      trace.push_back({x, y, 0.0, is_qtp ? "tricritical" : "second_order"});
    } else {
      td_boundary_point bp;
      check_status(td_first_order_boundary(x, &bp));
      trace.push_back({x, bp.y_c, bp.z_jump, "first_order"});
    }
  }

  std::string content;
  if (format == "json") {
    json doc;
    doc["manifest"] = manifest_json("boundary", cfg);
    json data = json::array();
    for (const auto& t : trace) {
      json row;
      row["x_c"] = t.x_c;
      row["y_c"] = t.y_c;
      row["order"] = t.order;
      row["z_jump"] = t.z_jump;
      data.push_back(row);
    }
    doc["data"] = data;
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << manifest_csv("boundary", cfg);
    os << "x_c,y_c,order,z_jump\n";
    for (const auto& t : trace)
      os << fmt(t.x_c) << "," << fmt(t.y_c) << "," << t.order << "," << fmt(t.z_jump) << "\n";
    content = os.str();
  }
  write_file(cfg.at("output"), content);
  write_sidecar("boundary", cfg);
  return 0;
}

// ---------------------------------------------------------------------------
// scaling

int cmd_scaling(const std::string& config_path, const Config& flags) {
  const Config defaults = {{"target", "qtp"},  {"side", "superradiant"}, {"lambda", "1"},
                           {"n_min", "1e-9"},  {"n_max", "1e-5"},        {"n_count", "9"},
                           {"format", "json"}, {"output", ""},           {"threads", "1"},
                           {"seed", "12345"}};
  const Config cfg = resolve(defaults, "scaling", config_path, flags);
  if (cfg.at("output").empty()) fail(kExitUsage, "field 'output': required");
  if (cfg.at("format") != "json") fail(kExitUsage, "field 'format': scaling reports are json");

  const std::string side_s = cfg.at("side");
  if (side_s != "normal" && side_s != "superradiant")
    fail(kExitUsage, "field 'side': must be normal or superradiant");
  const int side = side_s == "superradiant" ? 1 : 0;

  double target_x;
  bool qtp = false;
  if (cfg.at("target") == "qtp") {
    target_x = td_qtp_x();
    qtp = true;
  } else {
    target_x = to_double(cfg, "target");
    qtp = std::abs(target_x - td_qtp_x()) < 1e-12;
  }
  const double lambda = to_double(cfg, "lambda");
  const double n_lo = to_double(cfg, "n_min"), n_hi = to_double(cfg, "n_max");
  const long n_count = to_long(cfg, "n_count");
  if (!(n_lo > 0.0 && n_hi > n_lo)) fail(kExitUsage, "field 'n_min'/'n_max': require 0 < n_min < n_max");
  if (n_count < 2) fail(kExitUsage, "field 'n_count': must be >= 2");
  std::vector<double> distances;
  for (long i = 0; i < n_count; ++i)
    distances.push_back(n_lo * std::pow(n_hi / n_lo, double(i) / (n_count - 1)));

  double y_c = 0.0;
  check_status(td_critical_line(target_x, &y_c));
  const double K = std::sqrt(1.0 / (y_c * y_c) + 4.0 * target_x * target_x * y_c * y_c);

  json report;
  report["manifest"] = manifest_json("scaling", cfg);
  json data;
  data["target"] = {{"x_c", target_x}, {"y_c", y_c}, {"tricritical", qtp}};
  data["side"] = side_s;
  data["lambda"] = lambda;

  if (side == 1) {
    td_scaling_fit fit;
    check_status(td_order_scaling(qtp ? td_qtp_x() : target_x, distances.data(),
                                  static_cast<int>(distances.size()), &fit));
    json alpha;
    alpha["exponent"] = fit.exponent;
    alpha["expected_exponent"] = qtp ? 0.25 : 0.5;
    alpha["amplitude"] = fit.amplitude;
    alpha["expected_amplitude"] =
        qtp ? 5.0 * std::sqrt(21.0) / 6.0 : 2.0 * K / (1.0 - 5.0 * target_x * target_x);
    alpha["r_squared"] = fit.r_squared;
    data["order_parameter"] = alpha;
  }

  {
    td_scaling_fit fit;
    check_status(td_det_scaling(qtp ? td_qtp_x() : target_x, side, lambda, distances.data(),
                                static_cast<int>(distances.size()), &fit));
    json beta;
    beta["exponent"] = fit.exponent;
    beta["beta"] = fit.amplitude;
    beta["expected_beta"] = side == 0 ? 1.0 : (qtp ? 4.0 : 2.0);
    beta["r_squared"] = fit.r_squared;
    data["determinant"] = beta;
  }

  {
    // residual of the gap-entropy relation at each window point
    const double slope = 2.0 * target_x / ((1.0 - target_x * target_x) * (1.0 - target_x * target_x));
    const double h = std::hypot(slope, 1.0);
    double dx = -slope / h, dy = 1.0 / h;
    if (side == 0) { dx = -dx; dy = -dy; }
    json residuals = json::array();
    for (double n : distances) {
      const double px = target_x + n * dx, py = y_c + n * dy;
      double res = 0.0, res_c = 0.0;
      int div = 0, div_c = 0;
      check_status(td_gap_entropy_residual(px, py, lambda, &res, &div));
      check_status(td_gap_entropy_residual_corrected(px, py, lambda, &res_c, &div_c));
      json r;
      r["n"] = n;
      r["x"] = px;
      r["y"] = py;
      r["residual"] = jnum(res);
      r["residual_corrected"] = jnum(res_c);
      r["divergent"] = div != 0;
      residuals.push_back(r);
    }
    data["gap_entropy_residuals"] = residuals;
  }

  report["data"] = data;
  write_file(cfg.at("output"), report.dump(2) + "\n");
  write_sidecar("scaling", cfg);
  return 0;
}

// ---------------------------------------------------------------------------
// ed

int cmd_ed(const std::string& config_path, const Config& flags) {
  const Config defaults = {{"x", "0"},         {"y", "2"},
                           {"lambda", "1"},    {"n_atoms", "8"},
                           {"n_max", "0"},     {"tolerance", "1e-8"},
                           {"max_dimension", "2000000"}, {"format", "json"},
                           {"output", ""},     {"threads", "1"},
                           {"seed", "12345"}};
  const Config cfg = resolve(defaults, "ed", config_path, flags);
  if (cfg.at("output").empty()) fail(kExitUsage, "field 'output': required");
  if (cfg.at("format") != "json") fail(kExitUsage, "field 'format': ed reports are json");

  td_point p{to_double(cfg, "x"), to_double(cfg, "y"), to_double(cfg, "lambda")};
  const auto n_list = to_double_list(cfg, "n_atoms");

  // thermodynamic-limit reference from the mean-field + fluctuation modules
  td_meanfield mf;
  td_fluct fl;
  check_status(td_analyze_point(&p, &mf, &fl));
  const double nph_per_atom_mf = p.y > 0.0 ? mf.z * mf.z / (4.0 * p.y * p.lambda) : 0.0;

  json report;
  report["manifest"] = manifest_json("ed", cfg);
  json data;
  data["point"] = {{"x", p.x}, {"y", p.y}, {"lambda", p.lambda}};
  data["limit"] = {{"z", mf.z},
                   {"energy_per_atom", mf.energy},
                   {"gap", jnum(fl.gap)},
                   {"n_photon_per_atom", nph_per_atom_mf}};

  json runs = json::array();
  for (double n_d : n_list) {
    const int n_atoms = static_cast<int>(n_d);
    if (n_d != n_atoms) fail(kExitUsage, "field 'n_atoms': must be integers");
    td_ed* ed = nullptr;
    check_status(td_ed_create(&ed));
    td_status s = TD_OK;
    td_ed_result r{};
    (s = td_ed_set_point(ed, &p)) == TD_OK && (s = td_ed_set_atoms(ed, n_atoms)) == TD_OK &&
        (s = td_ed_set_nmax(ed, static_cast<int>(to_long(cfg, "n_max")))) == TD_OK &&
        (s = td_ed_set_tolerance(ed, to_double(cfg, "tolerance"))) == TD_OK &&
        (s = td_ed_set_max_dimension(ed, to_long(cfg, "max_dimension"))) == TD_OK &&
        (s = td_ed_set_seed(ed, static_cast<unsigned>(to_long(cfg, "seed")))) == TD_OK &&
        (s = td_ed_run(ed)) == TD_OK && (s = td_ed_get_result(ed, &r));
    td_ed_destroy(ed);
    check_status(s);
    json row;
    row["n_atoms"] = n_atoms;
    row["ground_energy"] = r.ground_energy;
    row["energy_per_atom"] = r.ground_energy / n_atoms;
    row["gap"] = r.gap;
    row["gap_intra"] = r.gap_intra;
    row["n_photon"] = r.n_photon;
    row["n_photon_per_atom"] = r.n_photon_per_atom;
    row["b_expect"] = r.b_expect;
    row["entropy"] = r.entropy;
    row["ground_parity"] = r.ground_parity;
    row["n_max_used"] = r.n_max_used;
    row["truncation_converged"] = r.truncation_converged != 0;
    row["diff_energy_per_atom"] = std::abs(r.ground_energy / n_atoms - mf.energy);
    row["diff_gap"] = std::isfinite(fl.gap) ? json(std::abs(r.gap - fl.gap)) : json(nullptr);
    row["diff_n_photon_per_atom"] = std::abs(r.n_photon_per_atom - nph_per_atom_mf);
    runs.push_back(row);
  }
  data["runs"] = runs;
  report["data"] = data;
  write_file(cfg.at("output"), report.dump(2) + "\n");
  write_sidecar("ed", cfg);
  return 0;
}

// collect only the flags the user actually passed
void add_override(CLI::App* sub, Config& flags, const std::string& flag,
                  const std::string& key, const std::string& desc) {
  sub->add_option_function<std::string>(
         flag, [&flags, key](const std::string& v) { flags[key] = v; }, desc)
      ->expected(1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tricritical Dicke model laboratory"};
  app.require_subcommand(1);

  struct SubSpec {
    std::string name;
    std::string config_path;
    Config flags;
    int (*run)(const std::string&, const Config&);
  };
  std::vector<SubSpec> specs;
  specs.push_back({"sweep", "", {}, cmd_sweep});
  specs.push_back({"boundary", "", {}, cmd_boundary});
  specs.push_back({"scaling", "", {}, cmd_scaling});
  specs.push_back({"ed", "", {}, cmd_ed});

  for (auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name);
    sub->add_option("--config", s.config_path, "key=value configuration file");
    add_override(sub, s.flags, "--output", "output", "output data file");
    add_override(sub, s.flags, "--format", "format", "csv or json");
    add_override(sub, s.flags, "--threads", "threads", "worker threads");
    add_override(sub, s.flags, "--seed", "seed", "iterative-solver start seed");
    if (s.name == "sweep") {
      add_override(sub, s.flags, "--x-min", "x_min", "grid start in x");
      add_override(sub, s.flags, "--x-max", "x_max", "grid end in x");
      add_override(sub, s.flags, "--x-count", "x_count", "grid points in x");
      add_override(sub, s.flags, "--y-min", "y_min", "grid start in y");
      add_override(sub, s.flags, "--y-max", "y_max", "grid end in y");
      add_override(sub, s.flags, "--y-count", "y_count", "grid points in y");
      add_override(sub, s.flags, "--lambda", "lambda", "comma-separated lambda list");
      add_override(sub, s.flags, "--quantities", "quantities", "comma-separated quantities");
    } else if (s.name == "boundary") {
      add_override(sub, s.flags, "--x-min", "x_min", "trace start");
      add_override(sub, s.flags, "--x-max", "x_max", "trace end");
      add_override(sub, s.flags, "--count", "count", "trace resolution");
    } else if (s.name == "scaling") {
      add_override(sub, s.flags, "--target", "target", "boundary x_c or 'qtp'");
      add_override(sub, s.flags, "--side", "side", "normal or superradiant");
      add_override(sub, s.flags, "--lambda", "lambda", "photon frequency ratio");
      add_override(sub, s.flags, "--n-min", "n_min", "smallest distance");
      add_override(sub, s.flags, "--n-max", "n_max", "largest distance");
      add_override(sub, s.flags, "--n-count", "n_count", "window size");
    } else {
      add_override(sub, s.flags, "--x", "x", "eps / w0");
      add_override(sub, s.flags, "--y", "y", "g^2 / (omega w0)");
      add_override(sub, s.flags, "--lambda", "lambda", "omega / w0");
      add_override(sub, s.flags, "--n-atoms", "n_atoms", "comma-separated atom counts");
      add_override(sub, s.flags, "--n-max", "n_max", "boson truncation (0 = auto)");
      add_override(sub, s.flags, "--tolerance", "tolerance", "truncation tolerance");
      add_override(sub, s.flags, "--max-dimension", "max_dimension", "Hilbert space budget");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    for (auto& s : specs)
      if (app.get_subcommand(s.name)->parsed()) return s.run(s.config_path, s.flags);
    return kExitUsage;
  } catch (const CliError& e) {
    std::fprintf(stderr, "tdicke: %s\n", e.message.c_str());
    return e.code;
  }
}
