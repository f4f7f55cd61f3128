#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zeno/basis.hpp"
#include "zeno/sparse_operator.hpp"

namespace zeno {

/// Entanglement entropy (nats) against Jt, plus the run description.
struct EETimeSeries {
  std::vector<double> times;
  std::vector<double> entropies;
  std::vector<double> norm_errors;
  double J = 1.0;
  double lambda = 0.0;
  double V = 0.0;
  /// Ordered key/value echo of the configuration that produced the series.
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t size() const { return times.size(); }
  void validate() const;
};

struct PlateauWindow {
  double t_lo = 10.0;
  double t_hi = 1e3;
};

struct PlateauStats {
  PlateauWindow window;
  std::size_t points = 0;
  double mean = 0.0;
  /// max |S(t) - mean| inside the window
  double max_deviation = 0.0;
  /// mean * (V / lambda)^2; NaN when lambda = 0
  double rescaled = 0.0;
};

/// Needs at least 10 grid points inside the window.
PlateauStats plateau_stats(const EETimeSeries& series, PlateauWindow window = {});

/// Earliest grid time t >= window.t_lo from which S stays >= factor * plateau
/// mean up to the end of the series; nullopt if the last point is below.
std::optional<double> lifetime(const EETimeSeries& series, const PlateauStats& plateau, double factor = 2.0);

/// Log-entropy distance below which rescaled curves count as collapsed
/// (a factor of 2).
inline const double kCollapseThreshold = 0.6931471805599453;

struct RescaledCurve {
  double lambda = 0.0;
  double V = 0.0;
  std::vector<double> times;      // lambda (J/V)^time_exponent t
  std::vector<double> entropies;  // (V/lambda)^value_exponent S
};

struct CollapseReport {
  double value_exponent = 2.0;
  double time_exponent = 1.0;
  /// Overlap of the rescaled time ranges used for the comparison.
  double overlap_lo = 0.0;
  double overlap_hi = 0.0;
  /// max over pairs and common grid points of |ln y_a - ln y_b|
  double log_distance = 0.0;
  /// Same in absolute rescaled-entropy units.
  double abs_distance = 0.0;
  std::vector<RescaledCurve> curves;
  std::vector<double> common_times;
  /// curves interpolated onto common_times, one row per curve
  std::vector<std::vector<double>> common_values;

  bool collapsed(double threshold = kCollapseThreshold) const { return log_distance <= threshold; }
};

struct CollapseOptions {
  int grid_points = 200;
  /// Rescaled entropies are capped at this multiple of the smallest rescaled
  /// plateau so saturated tails (which cannot collapse) do not dominate.
  /// Non-positive disables the cap.
  double ceiling_factor = 0.0;
  /// Optional restriction of the comparison to a rescaled-time window.
  std::optional<std::pair<double, double>> window;
  PlateauWindow plateau_window{};
};

/// Rescales every series by (V/lambda)^value_exponent and
/// lambda (J/V)^time_exponent, interpolates linearly in ln t onto a common
/// log grid over the overlapping range and reports the worst pairwise gap.
CollapseReport rescale_collapse(const std::vector<EETimeSeries>& series, double value_exponent, double time_exponent,
                                const CollapseOptions& options = {});

/// Linear interpolation of y at x in ln(x); x must lie inside [xs.front(), xs.back()].
double interpolate_log_time(const std::vector<double>& xs, const std::vector<double>& ys, double x);

/// max / min of a set of positive values.
double spread_ratio(const std::vector<double>& values);

struct SpectrumReport {
  int num_rungs = 0;
  std::vector<double> eigenvalues;
  std::vector<SectorLabel> dominant_sector;
  std::vector<double> weight;
  std::vector<bool> highlighted;
};

/// Full dense diagonalization (L <= 6) with each eigenstate tagged by the
/// sector holding most of its weight; ties go to the lowest sector mask.
SpectrumReport spectrum_report(const SparseOperator& h, int num_rungs, const std::vector<SectorLabel>& highlight = {});

/// min |E_a - E_b| over eigenstates a dominated by `sector` and b not.
double isolation_gap(const SpectrumReport& report, const SectorLabel& sector);
/// True if some eigenvalue not dominated by `sector` lies strictly between
/// the smallest and largest eigenvalue of the sector's states.
bool sector_interleaves(const SpectrumReport& report, const SectorLabel& sector);

}  // namespace zeno
