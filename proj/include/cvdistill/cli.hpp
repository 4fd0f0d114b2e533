#pragma once

// Command implementations behind the `cvdistill` executable. Kept in the
// library so the exit-code and file-format contracts are testable in-process.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cvdistill/scenarios.hpp"

namespace cvdistill::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kComputeError = 3, kIoError = 4 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` run description. Keys: strategies, s, n_th, n_trunc,
/// eta_min, eta_max, eta_points, objective, t, output.
struct RunConfig {
  std::vector<Strategy> strategies;
  double s = 0.0;
  double n_th = 0.0;
  int n_trunc = 5;
  double eta_min = 0.01;
  double eta_max = 1.0;
  int eta_points = 101;
  Objective objective = Objective::Negativity;
  std::optional<double> t;
  std::string output;
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

inline constexpr std::string_view kCsvHeader =
    "strategy,s,n_th,eta,t_opt,E_N,E_N_gauss,fidelity,p_success,flags";

/// %.12g with negative zero printed as 0.
std::string format_number(double v);
std::string format_csv_row(Strategy strategy, double s, double n_th, const SweepRecord& rec);

/// Runs every strategy of `cfg` and returns the complete CSV text.
std::string render_sweep_csv(const RunConfig& cfg);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// `output_override` replaces the config's output; an empty target writes to `out`.
int cmd_sweep(const std::filesystem::path& config_path,
              const std::optional<std::string>& output_override, std::ostream& out,
              std::ostream& err);

struct PointArgs {
  std::string strategy;
  double s = 0.0;
  double eta = 1.0;
  double n_th = 0.0;
  std::optional<double> t;
  int n_trunc = 5;
  std::string objective = "negativity";
  bool json = false;
};

int cmd_point(const PointArgs& args, std::ostream& out, std::ostream& err);

int cmd_env(double wavelength_m, double temperature_k, std::ostream& out, std::ostream& err);

}  // namespace cvdistill::cli
