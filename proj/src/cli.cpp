#include "cvdistill/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cvdistill/errors.hpp"

namespace cvdistill::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v))
    throw ConfigError("invalid number for '" + std::string(key) + "': " + std::string(value));
  return v;
}

int parse_int(std::string_view key, std::string_view value) {
  int v = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("invalid integer for '" + std::string(key) + "': " + std::string(value));
  return v;
}

std::vector<Strategy> parse_strategy_list(std::string_view value) {
  std::vector<Strategy> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const std::string_view item = trim(value.substr(0, comma));
    if (!item.empty()) {
      const auto s = parse_strategy(item);
      if (!s) throw ConfigError("unknown strategy: " + std::string(item));
      out.push_back(*s);
    }
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (cfg.strategies.empty()) throw ConfigError("strategy list is empty");
  if (!(cfg.s >= 0.0)) throw ConfigError("s must be >= 0");
  if (!(cfg.n_th >= 0.0)) throw ConfigError("n_th must be >= 0");
  if (cfg.n_trunc < 0 || cfg.n_trunc > 12) throw ConfigError("n_trunc must lie in [0,12]");
  if (!(cfg.eta_min > 0.0 && cfg.eta_min <= cfg.eta_max && cfg.eta_max <= 1.0))
    throw ConfigError("eta range must satisfy 0 < eta_min <= eta_max <= 1");
  if (cfg.eta_points < 1) throw ConfigError("eta_points must be >= 1");
  if (cfg.t && !(*cfg.t >= 0.0 && *cfg.t <= 1.0)) throw ConfigError("t must lie in [0,1]");
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  static const std::set<std::string, std::less<>> kKeys{
      "strategies", "s", "n_th", "n_trunc", "eta_min", "eta_max", "eta_points", "objective", "t",
      "output"};
  std::map<std::string, std::string, std::less<>> entries;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKeys.contains(key)) throw ConfigError("unknown key: " + key);
    if (!entries.emplace(key, value).second) throw ConfigError("duplicate key: " + key);
  }

  for (const char* required : {"strategies", "s", "n_th"})
    if (!entries.contains(required)) throw ConfigError(std::string("missing key: ") + required);

  RunConfig cfg;
  for (const auto& [key, value] : entries) {
    if (key == "strategies") {
      cfg.strategies = parse_strategy_list(value);
    } else if (key == "s") {
      cfg.s = parse_double(key, value);
    } else if (key == "n_th") {
      cfg.n_th = parse_double(key, value);
    } else if (key == "n_trunc") {
      cfg.n_trunc = parse_int(key, value);
    } else if (key == "eta_min") {
      cfg.eta_min = parse_double(key, value);
    } else if (key == "eta_max") {
      cfg.eta_max = parse_double(key, value);
    } else if (key == "eta_points") {
      cfg.eta_points = parse_int(key, value);
    } else if (key == "objective") {
      const auto o = parse_objective(value);
      if (!o) throw ConfigError("unknown objective: " + value);
      cfg.objective = *o;
    } else if (key == "t") {
      cfg.t = parse_double(key, value);
    } else if (key == "output") {
      cfg.output = value;
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_csv_row(Strategy strategy, double s, double n_th, const SweepRecord& rec) {
  std::string row(to_string(strategy));
  for (double v : {s, n_th, rec.eta, rec.t_opt, rec.e_n_fock, rec.e_n_gauss, rec.fidelity,
                   rec.p_success}) {
    row += ',';
    row += format_number(v);
  }
  row += ',';
  row += join_flags(rec.flags);
  return row;
}

std::string render_sweep_csv(const RunConfig& cfg) {
  const auto grid = uniform_grid(cfg.eta_min, cfg.eta_max, cfg.eta_points);
  std::string csv(kCsvHeader);
  csv += '\n';
  for (Strategy strategy : cfg.strategies) {
    ScenarioConfig sc;
    sc.strategy = strategy;
    sc.s = cfg.s;
    sc.channel = ChannelParams(1.0, cfg.n_th);
    sc.n_trunc = cfg.n_trunc;
    sc.objective = cfg.objective;
    sc.t_override = cfg.t;
    for (const auto& rec : sweep_eta(sc, grid)) {
      csv += format_csv_row(strategy, cfg.s, cfg.n_th, rec);
      csv += '\n';
    }
  }
  return csv;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place: " + path.string());
  }
}

int cmd_sweep(const std::filesystem::path& config_path,
              const std::optional<std::string>& output_override, std::ostream& out,
              std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (output_override) cfg.output = *output_override;

  std::string csv;
  try {
    csv = render_sweep_csv(cfg);
  } catch (const std::exception& e) {
    err << "compute error: " << e.what() << '\n';
    return kComputeError;
  }

  if (cfg.output.empty()) {
    out << csv;
    return out ? kOk : kIoError;
  }
  try {
    write_file_atomic(cfg.output, csv);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoError;
  }
  return kOk;
}

int cmd_point(const PointArgs& args, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg;
  try {
    const auto strategy = parse_strategy(args.strategy);
    if (!strategy) throw ConfigError("unknown strategy: " + args.strategy);
    const auto objective = parse_objective(args.objective);
    if (!objective) throw ConfigError("unknown objective: " + args.objective);
    if (!(args.s >= 0.0)) throw ConfigError("s must be >= 0");
    if (args.t && !(*args.t >= 0.0 && *args.t <= 1.0)) throw ConfigError("t must lie in [0,1]");
    if (args.n_trunc < 0 || args.n_trunc > 12) throw ConfigError("n_trunc must lie in [0,12]");
    cfg.strategy = *strategy;
    cfg.objective = *objective;
    cfg.s = args.s;
    cfg.n_trunc = args.n_trunc;
    cfg.channel = ChannelParams(args.eta, args.n_th);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  SweepRecord rec;
  try {
    double t = 1.0;
    if (args.t) {
      t = *args.t;
    } else if (is_coherent(cfg.strategy)) {
      const OptimizeResult opt = optimize_t(cfg);
      t = opt.t_opt;
      if (opt.zero_objective) rec.flags.emplace_back("zero_objective");
    }
    auto flags = std::move(rec.flags);
    rec = evaluate_point(cfg, t);
    rec.flags = std::move(flags);
  } catch (const std::exception& e) {
    err << "compute error: " << e.what() << '\n';
    return kComputeError;
  }

  if (args.json) {
    nlohmann::ordered_json j;
    j["strategy"] = to_string(cfg.strategy);
    j["s"] = args.s;
    j["n_th"] = args.n_th;
    j["eta"] = rec.eta;
    j["t_opt"] = rec.t_opt;
    j["E_N"] = rec.e_n_fock;
    j["E_N_gauss"] = rec.e_n_gauss;
    j["fidelity"] = rec.fidelity;
    j["p_success"] = rec.p_success;
    j["flags"] = rec.flags;
    out << j.dump(2) << '\n';
  } else {
    out << "strategy " << to_string(cfg.strategy) << '\n'
        << "s " << format_number(args.s) << '\n'
        << "n_th " << format_number(args.n_th) << '\n'
        << "eta " << format_number(rec.eta) << '\n'
        << "t_opt " << format_number(rec.t_opt) << '\n'
        << "E_N " << format_number(rec.e_n_fock) << '\n'
        << "E_N_gauss " << format_number(rec.e_n_gauss) << '\n'
        << "fidelity " << format_number(rec.fidelity) << '\n'
        << "p_success " << format_number(rec.p_success) << '\n'
        << "flags " << join_flags(rec.flags) << '\n';
  }
  return out ? kOk : kIoError;
}

int cmd_env(double wavelength_m, double temperature_k, std::ostream& out, std::ostream& err) {
  if (!(wavelength_m > 0.0) || !(temperature_k > 0.0) || !std::isfinite(wavelength_m) ||
      !std::isfinite(temperature_k)) {
    err << "config error: wavelength and temperature must be positive\n";
    return kConfigError;
  }
  out << "wavelength_m " << format_number(wavelength_m) << '\n'
      << "temperature_k " << format_number(temperature_k) << '\n'
      << "n_th " << format_number(thermal_occupation(wavelength_m, temperature_k)) << '\n';
  return out ? kOk : kIoError;
}

}  // namespace cvdistill::cli
