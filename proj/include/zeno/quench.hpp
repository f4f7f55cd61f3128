#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zeno/analysis.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/hamiltonian.hpp"

namespace zeno {

enum class InitKind { RandomProduct, SectorGround, Explicit };

InitKind parse_init(std::string_view name);
std::string to_string(InitKind kind);

/// Everything needed to reproduce one quench.
struct QuenchSpec {
  int num_rungs = 6;
  SectorLabel sector;
  InitKind init = InitKind::RandomProduct;
  std::uint64_t seed = 1;
  /// Basis states of an explicit initial state (equal-weight superposition).
  std::vector<Index> explicit_support;
  PerturbationKind perturbation = PerturbationKind::None;
  ModelParams params;
  EvolverKind evolver = EvolverKind::Dense;
  TimeGrid grid = TimeGrid::log(1e3, TimeGrid::default_points(1e3));
  /// Rung cut of the entropy; 0 means L/2.
  int cut = 0;

  int effective_cut() const { return cut > 0 ? cut : num_rungs / 2; }
  void validate() const;
};

/// Sector-diagonal part of the model: H0 + H_V + mirror breaker.
SparseOperator sector_diagonal_hamiltonian(const QuenchSpec& spec);
SparseOperator full_hamiltonian(const QuenchSpec& spec);

StateVector initial_state(const QuenchSpec& spec);

/// Entropy time series of one quench under the full Hamiltonian.
EETimeSeries run_quench(const QuenchSpec& spec);
/// Same with a caller-supplied generator (e.g. a Zeno Hamiltonian).
EETimeSeries run_quench(const QuenchSpec& spec, const SparseOperator& h);
/// Dense path reusing an eigensystem shared across initial states.
EETimeSeries run_quench(const QuenchSpec& spec, const DenseEigensystem& eig);

}  // namespace zeno
