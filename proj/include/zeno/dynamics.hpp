#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zeno/basis.hpp"
#include "zeno/eigensystem.hpp"
#include "zeno/sparse_operator.hpp"
#include "zeno/time_grid.hpp"

namespace zeno {

/// Complex amplitudes over the 4^L basis.
struct StateVector {
  int num_rungs = 0;
  std::vector<cplx> amplitudes;

  StateVector() = default;
  StateVector(int rungs, std::vector<cplx> amps);

  Index dim() const { return amplitudes.size(); }
  double norm() const;
  std::span<const cplx> view() const { return amplitudes; }
};

/// Weight of a state inside one sector.
double sector_population(const StateVector& state, const SectorLabel& sector);

/// Per-rung Bloch angles of a sector product state.
struct RungAngles {
  std::vector<double> theta;
  std::vector<double> phi;
};

/// theta uniform on [0, pi/2], phi uniform on [0, 2 pi), drawn rung by rung
/// (theta then phi) from a 64-bit Mersenne twister seeded with `seed`.
RungAngles draw_rung_angles(int num_rungs, std::uint64_t seed);

/// Product over rungs of cos(theta)|00> + sin(theta) e^{i phi}|11> (sign +)
/// or cos(theta)|01> + sin(theta) e^{i phi}|10> (sign -).
StateVector sector_product_state(const SectorLabel& sector, const RungAngles& angles);
StateVector random_sector_product_state(const SectorLabel& sector, std::uint64_t seed);

struct GroundState {
  StateVector state;
  double energy = 0.0;
  /// Gap to the next level of the sector block.
  double gap = 0.0;
  bool degenerate = false;
};

/// Lowest eigenvector of h restricted to the sector. The global phase makes
/// the first largest-magnitude amplitude real and positive.
GroundState sector_ground_state(const SectorLabel& sector, const SparseOperator& h);

enum class EvolverKind { Dense, Krylov };

EvolverKind parse_evolver(std::string_view name);
std::string to_string(EvolverKind kind);
/// Dense for L <= 6, Krylov above.
EvolverKind default_evolver(int num_rungs);

using StateSink = std::function<void(std::size_t, double, std::span<const cplx>)>;

struct KrylovOptions {
  /// Estimated norm error allowed per Krylov step.
  double tolerance = 1e-12;
  int max_dimension = 40;
  /// Smallest acceptable step in units of 1/max|h_ij|; below it the subspace is
  /// too small for the tolerance and propagation fails.
  double min_scaled_step = 1e-4;
};

/// Streams exp(-i h t)|state> for every grid time into sink.
void evolve(const StateVector& state, const SparseOperator& h, const TimeGrid& grid, EvolverKind kind,
            const StateSink& sink, const KrylovOptions& krylov = {});
/// Dense path with a precomputed eigensystem.
void evolve(const StateVector& state, const DenseEigensystem& eig, const TimeGrid& grid, const StateSink& sink);
/// Collects every output state. Memory grows with grid size; prefer the sink overload for long runs.
std::vector<StateVector> evolve(const StateVector& state, const SparseOperator& h, const TimeGrid& grid,
                                EvolverKind kind, const KrylovOptions& krylov = {});

/// <target|state> for each basis index.
std::vector<cplx> coefficients(std::span<const cplx> state, const std::vector<Index>& targets);

}  // namespace zeno
