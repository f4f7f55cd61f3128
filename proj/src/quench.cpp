#include "zeno/quench.hpp"

#include <cmath>
#include <stdexcept>

#include "zeno/entanglement.hpp"
#include "zeno/errors.hpp"

namespace zeno {

InitKind parse_init(std::string_view name) {
  if (name == "random_product") return InitKind::RandomProduct;
  if (name == "sector_ground") return InitKind::SectorGround;
  if (name == "explicit") return InitKind::Explicit;
  throw std::invalid_argument("unknown init kind '" + std::string(name) + "'");
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::RandomProduct: return "random_product";
    case InitKind::SectorGround: return "sector_ground";
    case InitKind::Explicit: return "explicit";
  }
  return "random_product";
}

void QuenchSpec::validate() const {
  check_num_rungs(num_rungs);
  if (sector.num_rungs() != num_rungs) throw std::invalid_argument("sector length does not match L");
  params.validate(num_rungs);
  const int c = effective_cut();
  if (c < 1 || c >= num_rungs) throw std::invalid_argument("entropy cut must lie in [1, L)");
  if (init == InitKind::Explicit && explicit_support.empty()) {
    throw std::invalid_argument("explicit initial state needs at least one basis state");
  }
  for (Index i : explicit_support) {
    if (i >= hilbert_dimension(num_rungs)) throw std::invalid_argument("explicit basis state outside the Hilbert space");
  }
}

SparseOperator sector_diagonal_hamiltonian(const QuenchSpec& spec) {
  ModelParams p = spec.params;
  p.lambda = 0.0;
  return build_hamiltonian(spec.num_rungs, PerturbationKind::None, p);
}

SparseOperator full_hamiltonian(const QuenchSpec& spec) {
  return build_hamiltonian(spec.num_rungs, spec.perturbation, spec.params);
}

StateVector initial_state(const QuenchSpec& spec) {
  spec.validate();
  switch (spec.init) {
    case InitKind::RandomProduct:
      return random_sector_product_state(spec.sector, spec.seed);
    case InitKind::SectorGround: {
      auto g = sector_ground_state(spec.sector, sector_diagonal_hamiltonian(spec));
      if (g.degenerate) {
        throw NumericalError("sector ground state of " + spec.sector.str() + " is degenerate (gap " + std::to_string(g.gap) + ")");
      }
      return std::move(g.state);
    }
    case InitKind::Explicit: {
      std::vector<cplx> amps(hilbert_dimension(spec.num_rungs), cplx{0.0, 0.0});
      const double a = 1.0 / std::sqrt(static_cast<double>(spec.explicit_support.size()));
      for (Index i : spec.explicit_support) amps[i] += a;
      StateVector s(spec.num_rungs, std::move(amps));
      if (std::abs(s.norm() - 1.0) > 1e-12) throw std::invalid_argument("explicit basis states must be distinct");
      return s;
    }
  }
  throw std::logic_error("unhandled init kind");
}

namespace {

EETimeSeries make_series(const QuenchSpec& spec) {
  EETimeSeries s;
  s.J = spec.params.J;
  s.lambda = spec.params.lambda;
  s.V = spec.params.V;
  s.times.reserve(spec.grid.size());
  s.entropies.reserve(spec.grid.size());
  s.norm_errors.reserve(spec.grid.size());
  return s;
}

StateSink recorder(const QuenchSpec& spec, EETimeSeries& s) {
  return [&spec, &s](std::size_t, double t, std::span<const cplx> psi) {
    double n2 = 0.0;
    for (const auto& z : psi) n2 += std::norm(z);
    s.times.push_back(t);
    s.norm_errors.push_back(std::abs(std::sqrt(n2) - 1.0));
    s.entropies.push_back(mid_chain_entropy(psi, spec.num_rungs, spec.effective_cut()));
  };
}

}  // namespace

EETimeSeries run_quench(const QuenchSpec& spec, const SparseOperator& h) {
  const auto psi0 = initial_state(spec);
  auto s = make_series(spec);
  evolve(psi0, h, spec.grid, spec.evolver, recorder(spec, s));
  return s;
}

EETimeSeries run_quench(const QuenchSpec& spec, const DenseEigensystem& eig) {
  const auto psi0 = initial_state(spec);
  auto s = make_series(spec);
  evolve(psi0, eig, spec.grid, recorder(spec, s));
  return s;
}

EETimeSeries run_quench(const QuenchSpec& spec) { return run_quench(spec, full_hamiltonian(spec)); }

}  // namespace zeno
