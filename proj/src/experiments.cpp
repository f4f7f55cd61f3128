#include "zeno/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "zeno/entanglement.hpp"
#include "zeno/errors.hpp"
#include "zeno/perturbation_theory.hpp"

namespace zeno {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& task) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<RunConfig> sweep_points(const RunConfig& cfg) {
  std::vector<RunConfig> out;
  for (double lam : cfg.lambda_list) {
    for (double v : cfg.v_list) {
      RunConfig p = cfg;
      p.experiment = ExperimentKind::Quench;
      p.lambda = lam;
      p.V = v;
      p.lambda_list.clear();
      p.v_list.clear();
      out.push_back(std::move(p));
    }
  }
  return out;
}

Metadata metadata_of(const RunConfig& cfg) { return cfg.echo(); }

SweepSummaryRow summarize(const EETimeSeries& series, PlateauWindow window) {
  SweepSummaryRow row;
  row.lambda = series.lambda;
  row.V = series.V;
  if (series.times.empty() || series.times.back() < window.t_hi || series.times.front() > window.t_lo) return row;
  row.plateau = plateau_stats(series, window);
  row.lifetime = lifetime(series, *row.plateau);
  return row;
}

std::vector<EETimeSeries> run_sweep(const RunConfig& cfg, int jobs) {
  const auto points = sweep_points(cfg);
  std::vector<EETimeSeries> out(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) { out[i] = run_quench(points[i].quench_spec()); });
  return out;
}

CoefficientSeries run_ptcoeff(const QuenchSpec& spec, const std::vector<Index>& targets) {
  CoefficientSeries out;
  const auto psi0 = initial_state(spec);
  evolve(psi0, full_hamiltonian(spec), spec.grid, spec.evolver, [&](std::size_t, double t, std::span<const cplx> psi) {
    out.times.push_back(t);
    std::vector<double> row;
    for (const auto& z : coefficients(psi, targets)) row.push_back(std::abs(z));
    out.magnitudes.push_back(std::move(row));
  });
  if (spec.num_rungs > 5 || spec.perturbation == PerturbationKind::None) return out;
  const auto pt = pt_first_order(sector_diagonal_hamiltonian(spec), build_perturbation(spec.perturbation, spec.num_rungs, 1.0),
                                 spec.params.lambda, spec.num_rungs);
  for (double t : out.times) {
    const auto psi = pt.propagate(psi0.view(), t);
    std::vector<double> row;
    for (const auto& z : coefficients(psi, targets)) row.push_back(std::abs(z));
    out.predicted.push_back(std::move(row));
  }
  return out;
}

namespace {

std::string point_name(const RunConfig& p) {
  return "sweep_lambda" + format_number(p.lambda) + "_V" + format_number(p.V) + ".csv";
}

std::string optional_cell(const std::optional<double>& x) {
  return x ? CsvWriter::cell(*x) : std::string("nan");
}

Metadata with_base(const RunConfig& cfg) {
  auto m = metadata_of(cfg);
  m.emplace_back("entropy_base", "e");
  return m;
}

std::vector<std::filesystem::path> write_quench(const RunConfig& cfg, const std::filesystem::path& dir) {
  const auto path = dir / "quench.csv";
  write_series(path, metadata_of(cfg), run_quench(cfg.quench_spec()));
  return {path};
}

std::vector<std::filesystem::path> write_sweep(const RunConfig& cfg, const std::filesystem::path& dir, int jobs) {
  const auto points = sweep_points(cfg);
  std::vector<std::filesystem::path> files(points.size());
  std::vector<SweepSummaryRow> rows(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) {
    const auto series = run_quench(points[i].quench_spec());
    files[i] = dir / point_name(points[i]);
    write_series(files[i], metadata_of(points[i]), series);
    rows[i] = summarize(series);
  });
  const auto summary = dir / "sweep_summary.csv";
  CsvWriter w(summary, with_base(cfg),
              {"lambda", "V", "plateau_mean", "plateau_max_deviation", "rescaled_plateau", "lifetime"});
  for (const auto& r : rows) {
    const auto& p = r.plateau;
    w.row({CsvWriter::cell(r.lambda), CsvWriter::cell(r.V), optional_cell(p ? std::optional{p->mean} : std::nullopt),
           optional_cell(p ? std::optional{p->max_deviation} : std::nullopt),
           optional_cell(p ? std::optional{p->rescaled} : std::nullopt), optional_cell(r.lifetime)});
  }
  w.close();
  files.push_back(summary);
  return files;
}

std::vector<std::filesystem::path> write_collapse(const RunConfig& cfg, const std::filesystem::path& dir, int jobs) {
  const auto series = run_sweep(cfg, jobs);
  std::vector<SweepSummaryRow> rows;
  for (const auto& s : series) rows.push_back(summarize(s));

  constexpr double kValueExponent = 2.0;
  const auto curves_path = dir / "collapse_curves.csv";
  const auto summary_path = dir / "collapse_summary.csv";
  CsvWriter curves(curves_path, with_base(cfg),
                   {"time_exponent", "lambda", "V", "rescaled_time", "rescaled_entropy"});
  CsvWriter summary(summary_path, with_base(cfg),
                    {"value_exponent", "time_exponent", "overlap_lo", "overlap_hi", "log_distance", "abs_distance",
                     "collapsed", "lifetime_spread"});
  for (int k = 1; k <= 3; ++k) {
    const auto rep = rescale_collapse(series, kValueExponent, k);
    for (const auto& c : rep.curves) {
      for (std::size_t i = 0; i < c.times.size(); ++i) {
        const double r[5] = {static_cast<double>(k), c.lambda, c.V, c.times[i], c.entropies[i]};
        curves.row(r);
      }
    }
    std::vector<double> rescaled_lifetimes;
    for (const auto& r : rows) {
      if (!r.lifetime) {
        rescaled_lifetimes.clear();
        break;
      }
      rescaled_lifetimes.push_back(*r.lifetime * r.lambda * std::pow(1.0 / r.V, k));
    }
    const double spread = rescaled_lifetimes.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                     : spread_ratio(rescaled_lifetimes);
    summary.row({CsvWriter::cell(kValueExponent), CsvWriter::cell(k), CsvWriter::cell(rep.overlap_lo),
                 CsvWriter::cell(rep.overlap_hi), CsvWriter::cell(rep.log_distance), CsvWriter::cell(rep.abs_distance),
                 rep.collapsed() ? "1" : "0", CsvWriter::cell(spread)});
  }
  curves.close();
  summary.close();
  return {curves_path, summary_path};
}

std::vector<std::filesystem::path> write_spectrum(const RunConfig& cfg, const std::filesystem::path& dir) {
  const auto spec = cfg.quench_spec();
  const auto rep = spectrum_report(full_hamiltonian(spec), cfg.L, {cfg.sector});
  const auto path = dir / "spectrum.csv";
  auto meta = with_base(cfg);
  if (!spec.params.c.empty() && cfg.L > 0) {
    try {
      meta.emplace_back("isolation_gap", CsvWriter::cell(isolation_gap(rep, cfg.sector)));
    } catch (const std::invalid_argument&) {
    }
  }
  CsvWriter w(path, meta, {"index", "energy", "dominant_sector", "weight", "highlighted"});
  for (std::size_t k = 0; k < rep.eigenvalues.size(); ++k) {
    w.row({std::to_string(k), CsvWriter::cell(rep.eigenvalues[k]), rep.dominant_sector[k].str(),
           CsvWriter::cell(rep.weight[k]), rep.highlighted[k] ? "1" : "0"});
  }
  w.close();
  return {path};
}

std::vector<std::filesystem::path> write_ptcoeff(const RunConfig& cfg, const std::filesystem::path& dir) {
  const auto data = run_ptcoeff(cfg.quench_spec(), cfg.target_indices());
  const auto path = dir / "ptcoeff.csv";
  std::vector<std::string> cols{"time"};
  for (const auto& t : cfg.targets) cols.push_back(t);
  if (!data.predicted.empty()) {
    for (const auto& t : cfg.targets) cols.push_back("pt_" + t);
  }
  CsvWriter w(path, with_base(cfg), cols);
  for (std::size_t k = 0; k < data.times.size(); ++k) {
    std::vector<double> r{data.times[k]};
    r.insert(r.end(), data.magnitudes[k].begin(), data.magnitudes[k].end());
    if (!data.predicted.empty()) r.insert(r.end(), data.predicted[k].begin(), data.predicted[k].end());
    w.row(r);
  }
  w.close();
  return {path};
}

std::vector<std::filesystem::path> write_fragments(const RunConfig& cfg, const std::filesystem::path& dir) {
  const auto dec = string_decomposition(cfg.sector);
  auto meta = with_base(cfg);
  std::string lengths;
  for (int l : dec.lengths()) lengths += (lengths.empty() ? "" : ",") + std::to_string(l);
  meta.emplace_back("num_sectors", std::to_string(std::uint64_t{1} << cfg.L));
  meta.emplace_back("num_strings", std::to_string(dec.strings.size()));
  meta.emplace_back("string_lengths", lengths);
  if (!cfg.c.empty()) {
    const auto zs = zeno_subspaces(SectorLabel::parse(cfg.c));
    const int m = zs.plateau_of(cfg.sector);
    meta.emplace_back("plateau", std::to_string(m));
    meta.emplace_back("sectors_on_plateau", std::to_string(zs.groups.at(m).size()));
  }
  const auto path = dir / "fragments.csv";
  CsvWriter w(path, meta, {"string_index", "start", "length", "sign"});
  for (std::size_t i = 0; i < dec.strings.size(); ++i) {
    const auto& s = dec.strings[i];
    w.row({std::to_string(i), std::to_string(s.start), std::to_string(s.length), s.sign > 0 ? "+" : "-"});
  }
  w.close();
  return {path};
}

}  // namespace

std::vector<std::filesystem::path> run_experiment(const RunConfig& cfg, int jobs) {
  cfg.validate();
  const std::filesystem::path dir = cfg.out_dir;
  std::filesystem::create_directories(dir);
  switch (cfg.experiment) {
    case ExperimentKind::Quench: return write_quench(cfg, dir);
    case ExperimentKind::Sweep: return write_sweep(cfg, dir, jobs);
    case ExperimentKind::Collapse: return write_collapse(cfg, dir, jobs);
    case ExperimentKind::Spectrum: return write_spectrum(cfg, dir);
    case ExperimentKind::PtCoeff: return write_ptcoeff(cfg, dir);
    case ExperimentKind::Fragments: return write_fragments(cfg, dir);
  }
  throw std::logic_error("unhandled experiment kind");
}

}  // namespace zeno
