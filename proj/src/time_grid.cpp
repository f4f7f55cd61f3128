#include "zeno/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno {

Spacing parse_spacing(std::string_view name) {
  if (name == "linear") return Spacing::Linear;
  if (name == "log") return Spacing::Log;
  throw std::invalid_argument("unknown time spacing '" + std::string(name) + "' (expected linear or log)");
}

std::string to_string(Spacing s) { return s == Spacing::Linear ? "linear" : "log"; }

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw std::invalid_argument("time grid is empty");
  if (!(times_.front() >= 0.0)) throw std::invalid_argument("time grid must start at t >= 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
  }
}

TimeGrid TimeGrid::linear(double t_max, int n) {
  if (!(t_max > 0.0) || n < 2) throw std::invalid_argument("linear grid needs t_max > 0 and n >= 2");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
  t.back() = t_max;
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::log_range(double t_min, double t_max, int n) {
  if (!(t_min > 0.0) || !(t_max > t_min) || n < 2) throw std::invalid_argument("log grid needs 0 < t_min < t_max and n >= 2");
  std::vector<double> t(n);
  const double a = std::log10(t_min);
  const double b = std::log10(t_max);
  for (int i = 0; i < n; ++i) t[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
  t.front() = t_min;
  t.back() = t_max;
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::log(double t_max, int n) {
  if (!(t_max > kLogStart) || n < 2) {
    throw std::invalid_argument("log grid needs t_max > " + std::to_string(kLogStart) + " and n >= 2");
  }
  std::vector<double> t{0.0};
  if (n == 2) {
    t.push_back(t_max);
  } else {
    const auto tail = log_range(kLogStart, t_max, n - 1);
    t.insert(t.end(), tail.times().begin(), tail.times().end());
  }
  return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::make(Spacing spacing, double t_max, int n) {
  return spacing == Spacing::Linear ? linear(t_max, n) : log(t_max, n);
}

int TimeGrid::default_points(double t_max) {
  if (!(t_max > kLogStart)) return 2;
  return static_cast<int>(std::ceil(kPointsPerDecade * std::log10(t_max / kLogStart))) + 2;
}

}  // namespace zeno
