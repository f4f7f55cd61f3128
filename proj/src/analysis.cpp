#include "zeno/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zeno/eigensystem.hpp"

namespace zeno {

void EETimeSeries::validate() const {
  if (times.size() != entropies.size()) throw std::invalid_argument("times and entropies differ in length");
  if (!norm_errors.empty() && norm_errors.size() != times.size()) {
    throw std::invalid_argument("norm errors and times differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("series times must be strictly increasing");
  }
}

PlateauStats plateau_stats(const EETimeSeries& series, PlateauWindow window) {
  series.validate();
  if (!(window.t_lo < window.t_hi)) throw std::invalid_argument("plateau window must have t_lo < t_hi");
  if (series.times.empty() || window.t_lo < series.times.front() || window.t_hi > series.times.back()) {
    throw std::invalid_argument("plateau window lies outside the series");
  }
  PlateauStats st;
  st.window = window;
  double sum = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.times[i] >= window.t_lo && series.times[i] <= window.t_hi) {
      sum += series.entropies[i];
      ++st.points;
    }
  }
  if (st.points == 0) throw std::invalid_argument("plateau window contains no grid points");
  if (st.points < 10) throw std::invalid_argument("plateau window contains fewer than 10 grid points");
  st.mean = sum / static_cast<double>(st.points);
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.times[i] >= window.t_lo && series.times[i] <= window.t_hi) {
      st.max_deviation = std::max(st.max_deviation, std::abs(series.entropies[i] - st.mean));
    }
  }
  st.rescaled = series.lambda > 0.0 ? st.mean * std::pow(series.V / series.lambda, 2)
                                    : std::numeric_limits<double>::quiet_NaN();
  return st;
}

std::optional<double> lifetime(const EETimeSeries& series, const PlateauStats& plateau, double factor) {
  if (!(factor > 1.0)) throw std::invalid_argument("lifetime factor must exceed 1");
  const double threshold = factor * plateau.mean;
  // Walk back from the end while S stays above the threshold; plateau
  // oscillations that touch it early do not count.
  std::optional<double> found;
  for (std::size_t i = series.size(); i-- > 0;) {
    if (series.times[i] < plateau.window.t_lo || series.entropies[i] < threshold) break;
    found = series.times[i];
  }
  return found;
}

double interpolate_log_time(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("interpolation needs matching, non-empty arrays");
  if (x < xs.front() || x > xs.back()) throw std::out_of_range("interpolation point outside the data range");
  auto hi = std::lower_bound(xs.begin(), xs.end(), x);
  if (hi == xs.begin()) return ys.front();
  const auto k = static_cast<std::size_t>(hi - xs.begin());
  if (*hi == x) return ys[k];
  const double l0 = std::log(xs[k - 1]);
  const double l1 = std::log(xs[k]);
  const double w = (std::log(x) - l0) / (l1 - l0);
  return ys[k - 1] + w * (ys[k] - ys[k - 1]);
}

double spread_ratio(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("spread of an empty set");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

CollapseReport rescale_collapse(const std::vector<EETimeSeries>& series, double value_exponent, double time_exponent,
                                const CollapseOptions& options) {
  if (series.size() < 2) throw std::invalid_argument("collapse needs at least two series");
  if (options.grid_points < 2) throw std::invalid_argument("collapse grid needs at least two points");
  CollapseReport rep;
  rep.value_exponent = value_exponent;
  rep.time_exponent = time_exponent;
  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    s.validate();
    if (!(s.lambda > 0.0) || !(s.V > 0.0)) throw std::invalid_argument("collapse needs lambda > 0 and V > 0 in every series");
    RescaledCurve c;
    c.lambda = s.lambda;
    c.V = s.V;
    const double tscale = s.lambda * std::pow(s.J / s.V, time_exponent);
    const double vscale = std::pow(s.V / s.lambda, value_exponent);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.times[i] <= 0.0) continue;
      c.times.push_back(s.times[i] * tscale);
      c.entropies.push_back(s.entropies[i] * vscale);
    }
    if (c.times.size() < 2) throw std::invalid_argument("series has fewer than two positive times");
    lo = std::max(lo, c.times.front());
    hi = std::min(hi, c.times.back());
    rep.curves.push_back(std::move(c));
  }
  if (options.window) {
    lo = std::max(lo, options.window->first);
    hi = std::min(hi, options.window->second);
  }
  if (!(hi > lo)) throw std::invalid_argument("rescaled time ranges do not overlap");
  rep.overlap_lo = lo;
  rep.overlap_hi = hi;

  double ceiling = std::numeric_limits<double>::infinity();
  if (options.ceiling_factor > 0.0) {
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
      const auto st = plateau_stats(s, options.plateau_window);
      smallest = std::min(smallest, st.mean * std::pow(s.V / s.lambda, value_exponent));
    }
    ceiling = options.ceiling_factor * smallest;
  }

  const int n = options.grid_points;
  for (int k = 0; k < n; ++k) rep.common_times.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1)));
  rep.common_times.front() = lo;
  rep.common_times.back() = hi;
  constexpr double kFloor = 1e-300;
  for (const auto& c : rep.curves) {
    std::vector<double> row;
    row.reserve(n);
    for (double t : rep.common_times) row.push_back(std::min(std::max(interpolate_log_time(c.times, c.entropies, t), kFloor), ceiling));
    rep.common_values.push_back(std::move(row));
  }
  for (std::size_t a = 0; a < rep.common_values.size(); ++a) {
    for (std::size_t b = a + 1; b < rep.common_values.size(); ++b) {
      for (int k = 0; k < n; ++k) {
        const double ya = rep.common_values[a][k];
        const double yb = rep.common_values[b][k];
        rep.abs_distance = std::max(rep.abs_distance, std::abs(ya - yb));
        rep.log_distance = std::max(rep.log_distance, std::abs(std::log(ya) - std::log(yb)));
      }
    }
  }
  return rep;
}

SpectrumReport spectrum_report(const SparseOperator& h, int num_rungs, const std::vector<SectorLabel>& highlight) {
  check_num_rungs(num_rungs);
  if (num_rungs > 6) throw std::invalid_argument("spectrum_report uses dense diagonalization and supports L <= 6");
  const DenseEigensystem eig(h, num_rungs);
  SpectrumReport rep;
  rep.num_rungs = num_rungs;
  rep.eigenvalues = eig.eigenvalues();
  const std::size_t n_sectors = std::size_t{1} << num_rungs;
  std::vector<std::uint32_t> mask_of(eig.dim());
  for (Index i = 0; i < eig.dim(); ++i) mask_of[i] = sector_mask_of(i, num_rungs);
  std::vector<double> pop(n_sectors);
  for (std::size_t k = 0; k < rep.eigenvalues.size(); ++k) {
    const auto v = eig.eigenvector(k);
    std::fill(pop.begin(), pop.end(), 0.0);
    for (Index i = 0; i < v.size(); ++i) pop[mask_of[i]] += std::norm(v[i]);
    std::size_t best = 0;
    for (std::size_t s = 1; s < n_sectors; ++s) {
      if (pop[s] > pop[best] + 1e-12) best = s;
    }
    rep.dominant_sector.push_back(SectorLabel::from_mask(static_cast<std::uint32_t>(best), num_rungs));
    rep.weight.push_back(pop[best]);
    rep.highlighted.push_back(std::find(highlight.begin(), highlight.end(), rep.dominant_sector.back()) != highlight.end());
  }
  return rep;
}

double isolation_gap(const SpectrumReport& report, const SectorLabel& sector) {
  std::vector<double> in, out;
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
    (report.dominant_sector[k] == sector ? in : out).push_back(report.eigenvalues[k]);
  }
  if (in.empty() || out.empty()) throw std::invalid_argument("isolation gap needs states inside and outside the sector");
  // Both lists are sorted ascending; merge-walk for the closest pair.
  double gap = std::numeric_limits<double>::infinity();
  std::size_t j = 0;
  for (double e : in) {
    while (j + 1 < out.size() && out[j + 1] <= e) ++j;
    gap = std::min(gap, std::abs(e - out[j]));
    if (j + 1 < out.size()) gap = std::min(gap, std::abs(out[j + 1] - e));
  }
  return gap;
}

bool sector_interleaves(const SpectrumReport& report, const SectorLabel& sector) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
    if (report.dominant_sector[k] == sector) {
      lo = std::min(lo, report.eigenvalues[k]);
      hi = std::max(hi, report.eigenvalues[k]);
    }
  }
  for (std::size_t k = 0; k < report.eigenvalues.size(); ++k) {
    if (!(report.dominant_sector[k] == sector) && report.eigenvalues[k] > lo && report.eigenvalues[k] < hi) return true;
  }
  return false;
}

}  // namespace zeno
