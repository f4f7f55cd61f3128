#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zeno/quench.hpp"

namespace zeno {

enum class ExperimentKind { Quench, Spectrum, Sweep, Collapse, PtCoeff, Fragments };

ExperimentKind parse_experiment(std::string_view name);
std::string to_string(ExperimentKind kind);

/// Flat description of one CLI run.
struct RunConfig {
  ExperimentKind experiment = ExperimentKind::Quench;
  int L = 6;
  SectorLabel sector;
  /// Protection sequence as a sign string; empty means no protection term.
  std::string c;
  PerturbationKind perturbation = PerturbationKind::None;
  double lambda = 0.0;
  double V = 0.0;
  double epsilon = 0.0;
  InitKind init = InitKind::RandomProduct;
  std::uint64_t seed = 1;
  /// Unset means dense for L <= 6, Krylov above.
  std::optional<EvolverKind> evolver;
  double t_max = 1e3;
  /// Unset means the default for the spacing.
  std::optional<int> n_times;
  Spacing spacing = Spacing::Log;
  /// 0 means L/2.
  int cut = 0;
  std::string out_dir = ".";
  std::vector<double> lambda_list;
  std::vector<double> v_list;
  /// Basis-state bit strings (2L characters, sigma then tau per rung, rung 0 first).
  std::vector<std::string> targets;

  void validate() const;
  TimeGrid grid() const;
  QuenchSpec quench_spec() const;
  std::vector<Index> target_indices() const;
  /// Every key with its canonical value, in the order of config_keys().
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// The accepted keys, in canonical order.
const std::vector<std::string>& config_keys();

/// Parses flat `key = value` text. Blank lines and `#` comments are skipped.
/// Errors throw ConfigError carrying the 1-based line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Rebuilds the config from the `# key=value` header of a CSV written by
/// this tool. Header keys that are not config keys are ignored.
RunConfig config_from_csv_header(const std::filesystem::path& path);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double x);

}  // namespace zeno
