#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/config.hpp"
#include "zeno/csv.hpp"

namespace zeno {

/// Runs task(i) for i in [0, n) on up to `jobs` threads. The first
/// exception thrown by any task is rethrown after all workers stop.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& task);

/// One quench config per (lambda, V) pair, lambda outermost.
std::vector<RunConfig> sweep_points(const RunConfig& cfg);

/// Header metadata for a file produced from cfg.
Metadata metadata_of(const RunConfig& cfg);

struct SweepSummaryRow {
  double lambda = 0.0;
  double V = 0.0;
  std::optional<PlateauStats> plateau;
  std::optional<double> lifetime;
};

SweepSummaryRow summarize(const EETimeSeries& series, PlateauWindow window = {});

/// Quench series for every sweep point, in sweep_points() order.
std::vector<EETimeSeries> run_sweep(const RunConfig& cfg, int jobs = 1);

struct CoefficientSeries {
  std::vector<double> times;
  /// magnitudes[k][j] = |<target_j | psi(t_k)>|
  std::vector<std::vector<double>> magnitudes;
  /// Same from first-order perturbation theory; empty above L = 5.
  std::vector<std::vector<double>> predicted;
};

/// Exact coefficients under the full Hamiltonian, plus the first-order
/// prediction when the model is small enough. A degenerate coupled pair in
/// the unperturbed spectrum raises NumericalError.
CoefficientSeries run_ptcoeff(const QuenchSpec& spec, const std::vector<Index>& targets);

/// Runs the configured experiment and writes its CSV files into out_dir.
/// Returns the written paths.
std::vector<std::filesystem::path> run_experiment(const RunConfig& cfg, int jobs = 1);

}  // namespace zeno
