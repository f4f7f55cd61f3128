#include "zeno/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno {

ExperimentKind parse_experiment(std::string_view name) {
  if (name == "quench") return ExperimentKind::Quench;
  if (name == "spectrum") return ExperimentKind::Spectrum;
  if (name == "sweep") return ExperimentKind::Sweep;
  if (name == "collapse") return ExperimentKind::Collapse;
  if (name == "ptcoeff") return ExperimentKind::PtCoeff;
  if (name == "fragments") return ExperimentKind::Fragments;
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Quench: return "quench";
    case ExperimentKind::Spectrum: return "spectrum";
    case ExperimentKind::Sweep: return "sweep";
    case ExperimentKind::Collapse: return "collapse";
    case ExperimentKind::PtCoeff: return "ptcoeff";
    case ExperimentKind::Fragments: return "fragments";
  }
  return "quench";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"experiment", "L",       "sector",  "c",        "perturbation",
                                                "lambda",     "V",       "epsilon", "init",     "seed",
                                                "evolver",    "t_max",   "n_times", "spacing",  "cut",
                                                "out_dir",    "lambda_list", "v_list", "targets"};
  return keys;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    const auto item = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (item.empty()) throw std::invalid_argument("empty list element");
    out.emplace_back(item);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw std::invalid_argument("not a finite number: '" + std::string(s) + "'");
  }
  return x;
}

template <class Int>
Int parse_int(std::string_view s) {
  Int x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return x;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::vector<std::string> items;
  for (double x : xs) items.push_back(format_number(x));
  return join(items);
}

void apply(RunConfig& cfg, const std::string& key, std::string_view value, bool& have_L) {
  if (key == "experiment") cfg.experiment = parse_experiment(value);
  else if (key == "L") { cfg.L = parse_int<int>(value); have_L = true; }
  else if (key == "sector") cfg.sector = SectorLabel::parse(value);
  else if (key == "c") cfg.c = value == "none" ? std::string{} : SectorLabel::parse(value).str();
  else if (key == "perturbation") cfg.perturbation = parse_perturbation(value);
  else if (key == "lambda") cfg.lambda = parse_double(value);
  else if (key == "V") cfg.V = parse_double(value);
  else if (key == "epsilon") cfg.epsilon = parse_double(value);
  else if (key == "init") cfg.init = parse_init(value);
  else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(value);
  else if (key == "evolver") cfg.evolver = value == "auto" ? std::nullopt : std::optional{parse_evolver(value)};
  else if (key == "t_max") cfg.t_max = parse_double(value);
  else if (key == "n_times") cfg.n_times = value == "auto" ? std::nullopt : std::optional{parse_int<int>(value)};
  else if (key == "spacing") cfg.spacing = parse_spacing(value);
  else if (key == "cut") cfg.cut = parse_int<int>(value);
  else if (key == "out_dir") cfg.out_dir = std::string(value);
  else if (key == "lambda_list") {
    cfg.lambda_list.clear();
    for (const auto& s : split_list(value)) cfg.lambda_list.push_back(parse_double(s));
  } else if (key == "v_list") {
    cfg.v_list.clear();
    for (const auto& s : split_list(value)) cfg.v_list.push_back(parse_double(s));
  } else if (key == "targets") cfg.targets = split_list(value);
  else throw std::invalid_argument("unknown key '" + key + "'");
}

bool may_be_empty(const std::string& key) {
  return key == "c" || key == "lambda_list" || key == "v_list" || key == "targets";
}

}  // namespace

void RunConfig::validate() const {
  check_num_rungs(L);
  if (sector.num_rungs() != L) throw std::invalid_argument("sector has " + std::to_string(sector.num_rungs()) + " rungs, L is " + std::to_string(L));
  if (!c.empty() && static_cast<int>(c.size()) != L) throw std::invalid_argument("c and sector must have the same length");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  if (n_times && *n_times < 2) throw std::invalid_argument("n_times must be at least 2");
  if (experiment == ExperimentKind::Sweep || experiment == ExperimentKind::Collapse) {
    if (lambda_list.empty() || v_list.empty()) throw std::invalid_argument("sweep and collapse need non-empty lambda_list and v_list");
  }
  if (experiment == ExperimentKind::Collapse && lambda_list.size() * v_list.size() < 2) {
    throw std::invalid_argument("collapse needs at least two (lambda, V) points");
  }
  if (experiment == ExperimentKind::PtCoeff && targets.empty()) throw std::invalid_argument("ptcoeff needs targets");
  if (experiment == ExperimentKind::Spectrum && L > 6) throw std::invalid_argument("spectrum supports L <= 6");
  if (init == InitKind::Explicit && targets.empty()) throw std::invalid_argument("init=explicit needs targets");
  target_indices();
  grid();
  quench_spec().validate();
}

TimeGrid RunConfig::grid() const {
  const int n = n_times ? *n_times : (spacing == Spacing::Log ? TimeGrid::default_points(t_max) : 201);
  return TimeGrid::make(spacing, t_max, n);
}

std::vector<Index> RunConfig::target_indices() const {
  std::vector<Index> out;
  for (const auto& t : targets) {
    if (static_cast<int>(t.size()) != 2 * L) throw std::invalid_argument("target '" + t + "' must have 2L bits");
    out.push_back(parse_bit_string(t).index);
  }
  return out;
}

QuenchSpec RunConfig::quench_spec() const {
  QuenchSpec q;
  q.num_rungs = L;
  q.sector = sector;
  q.init = init;
  q.seed = seed;
  if (init == InitKind::Explicit) q.explicit_support = target_indices();
  q.perturbation = perturbation;
  q.params.lambda = lambda;
  q.params.V = V;
  q.params.epsilon = epsilon;
  if (!c.empty()) q.params.c = SectorLabel::parse(c).signs();
  q.evolver = evolver ? *evolver : default_evolver(L);
  q.grid = grid();
  q.cut = cut;
  return q;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  return {
      {"experiment", to_string(experiment)},
      {"L", std::to_string(L)},
      {"sector", sector.str()},
      {"c", c.empty() ? "none" : c},
      {"perturbation", to_string(perturbation)},
      {"lambda", format_number(lambda)},
      {"V", format_number(V)},
      {"epsilon", format_number(epsilon)},
      {"init", to_string(init)},
      {"seed", std::to_string(seed)},
      {"evolver", evolver ? to_string(*evolver) : "auto"},
      {"t_max", format_number(t_max)},
      {"n_times", n_times ? std::to_string(*n_times) : "auto"},
      {"spacing", to_string(spacing)},
      {"cut", std::to_string(cut)},
      {"out_dir", out_dir},
      {"lambda_list", join(lambda_list)},
      {"v_list", join(v_list)},
      {"targets", join(targets)},
  };
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  bool have_L = false;
  bool have_sector = false;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value', got '" + std::string(line) + "'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("missing key before '='", line_no);
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) {
      throw ConfigError("unknown key '" + key + "'", line_no);
    }
    if (auto [it, fresh] = seen.emplace(key, line_no); !fresh) {
      throw ConfigError("duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")", line_no);
    }
    if (value.empty() && !may_be_empty(key)) throw ConfigError("empty value for '" + key + "'", line_no);
    try {
      apply(cfg, key, value, have_L);
    } catch (const std::exception& e) {
      throw ConfigError(key + ": " + e.what(), line_no);
    }
    if (key == "sector") have_sector = true;
  }
  if (!have_sector) throw ConfigError("missing required key 'sector'");
  if (!have_L) cfg.L = cfg.sector.num_rungs();
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig config_from_csv_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::string text, line;
  while (std::getline(in, line) && line.starts_with("#")) {
    const auto body = trim(std::string_view(line).substr(1));
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(trim(body.substr(0, eq)));
    if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end()) continue;
    text += std::string(body) + "\n";
  }
  return parse_config(text);
}

}  // namespace zeno
