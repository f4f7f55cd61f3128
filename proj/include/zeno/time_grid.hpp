#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zeno {

enum class Spacing { Linear, Log };

Spacing parse_spacing(std::string_view name);
std::string to_string(Spacing s);

/// Ascending list of evaluation times (in units of 1/J).
class TimeGrid {
 public:
  /// Lower edge of the logarithmic part of log grids.
  static constexpr double kLogStart = 1e-2;
  static constexpr int kPointsPerDecade = 200;

  explicit TimeGrid(std::vector<double> times);

  /// n points evenly spaced on [0, t_max].
  static TimeGrid linear(double t_max, int n);
  /// t = 0 followed by n - 1 points log-spaced on [kLogStart, t_max].
  static TimeGrid log(double t_max, int n);
  /// n points log-spaced on [t_min, t_max], no zero.
  static TimeGrid log_range(double t_min, double t_max, int n);
  static TimeGrid make(Spacing spacing, double t_max, int n);
  /// Point count of the default log grid (200 per decade above kLogStart, plus t = 0).
  static int default_points(double t_max);

  std::span<const double> times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }
  double back() const { return times_.back(); }

 private:
  std::vector<double> times_;
};

}  // namespace zeno
