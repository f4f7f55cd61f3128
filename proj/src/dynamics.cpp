#include "zeno/dynamics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "zeno/errors.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/kernels.hpp"
#include "zeno/krylov.hpp"

namespace zeno {

StateVector::StateVector(int rungs, std::vector<cplx> amps) : num_rungs(rungs), amplitudes(std::move(amps)) {
  check_num_rungs(rungs);
  if (amplitudes.size() != hilbert_dimension(rungs)) throw std::invalid_argument("amplitude count does not match 4^L");
}

double StateVector::norm() const {
  return std::sqrt(kernels::active().norm_squared(amplitudes.size(), amplitudes.data()));
}

double sector_population(const StateVector& state, const SectorLabel& sector) {
  if (sector.num_rungs() != state.num_rungs) throw std::invalid_argument("sector length does not match state");
  const auto mask = sector.mask();
  double p = 0.0;
  for (Index i = 0; i < state.dim(); ++i) {
    if (sector_mask_of(i, state.num_rungs) == mask) p += std::norm(state.amplitudes[i]);
  }
  return p;
}

RungAngles draw_rung_angles(int num_rungs, std::uint64_t seed) {
  check_num_rungs(num_rungs);
  std::mt19937_64 gen(seed);
  // 53 random mantissa bits; independent of the standard library's
  // distribution implementations.
  auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  RungAngles a;
  for (int i = 0; i < num_rungs; ++i) {
    a.theta.push_back(uniform() * (std::numbers::pi / 2));
    a.phi.push_back(uniform() * (2 * std::numbers::pi));
  }
  return a;
}

StateVector sector_product_state(const SectorLabel& sector, const RungAngles& angles) {
  const int L = sector.num_rungs();
  if (static_cast<int>(angles.theta.size()) != L || static_cast<int>(angles.phi.size()) != L) {
    throw std::invalid_argument("one (theta, phi) pair per rung is required");
  }
  // Per-rung amplitudes indexed by the rung digit 2 sigma + tau.
  std::vector<std::array<cplx, 4>> rung(L);
  for (int i = 0; i < L; ++i) {
    const cplx lo = std::cos(angles.theta[i]);
    const cplx hi = std::sin(angles.theta[i]) * std::polar(1.0, angles.phi[i]);
    rung[i] = sector[i] > 0 ? std::array<cplx, 4>{lo, 0.0, 0.0, hi} : std::array<cplx, 4>{0.0, lo, hi, 0.0};
  }
  const Index dim = hilbert_dimension(L);
  std::vector<cplx> amps(dim, cplx{0.0, 0.0});
  for (Index idx : sector_basis(sector)) {
    cplx a{1.0, 0.0};
    for (int i = 0; i < L; ++i) a *= rung[i][(idx >> (2 * i)) & 3u];
    amps[idx] = a;
  }
  return StateVector(L, std::move(amps));
}

StateVector random_sector_product_state(const SectorLabel& sector, std::uint64_t seed) {
  return sector_product_state(sector, draw_rung_angles(sector.num_rungs(), seed));
}

GroundState sector_ground_state(const SectorLabel& sector, const SparseOperator& h) {
  const int L = sector.num_rungs();
  if (h.dim() != hilbert_dimension(L)) throw std::invalid_argument("operator dimension does not match sector length");
  const auto indices = sector_basis(sector);
  const Eigen::MatrixXcd block = restrict_to_indices(h, indices);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
  if (solver.info() != Eigen::Success) throw NumericalError("sector block diagonalization failed");

  Eigen::VectorXcd v = solver.eigenvectors().col(0);
  Eigen::Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  // Values within roundoff of the maximum count as ties; take the first.
  const double vmax = std::abs(v[pivot]);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > vmax * (1.0 - 1e-10)) {
      pivot = i;
      break;
    }
  }
  v *= std::conj(v[pivot]) / std::abs(v[pivot]);

  GroundState g;
  std::vector<cplx> amps(h.dim(), cplx{0.0, 0.0});
  for (std::size_t k = 0; k < indices.size(); ++k) amps[indices[k]] = v[static_cast<Eigen::Index>(k)];
  g.state = StateVector(L, std::move(amps));
  const auto& ev = solver.eigenvalues();
  g.energy = ev[0];
  g.gap = ev.size() > 1 ? ev[1] - ev[0] : 0.0;
  g.degenerate = ev.size() > 1 && g.gap < 1e-9 * std::max(1.0, std::abs(ev[0]));
  return g;
}

EvolverKind parse_evolver(std::string_view name) {
  if (name == "dense") return EvolverKind::Dense;
  if (name == "krylov") return EvolverKind::Krylov;
  throw std::invalid_argument("unknown evolver '" + std::string(name) + "' (expected dense or krylov)");
}

std::string to_string(EvolverKind kind) { return kind == EvolverKind::Dense ? "dense" : "krylov"; }

EvolverKind default_evolver(int num_rungs) { return num_rungs <= 6 ? EvolverKind::Dense : EvolverKind::Krylov; }

void evolve(const StateVector& state, const DenseEigensystem& eig, const TimeGrid& grid, const StateSink& sink) {
  eig.propagate(state.amplitudes, grid.times(), sink);
}

void evolve(const StateVector& state, const SparseOperator& h, const TimeGrid& grid, EvolverKind kind,
            const StateSink& sink, const KrylovOptions& krylov) {
  if (h.dim() != state.dim()) throw std::invalid_argument("state and operator dimensions differ");
  if (std::abs(state.norm() - 1.0) > 1e-10) throw std::invalid_argument("initial state is not normalized");
  if (kind == EvolverKind::Dense) {
    const DenseEigensystem eig(h, state.num_rungs);
    evolve(state, eig, grid, sink);
  } else {
    KrylovPropagator prop(h, krylov);
    prop.propagate(state.amplitudes, grid.times(), sink);
  }
}

std::vector<StateVector> evolve(const StateVector& state, const SparseOperator& h, const TimeGrid& grid,
                                EvolverKind kind, const KrylovOptions& krylov) {
  std::vector<StateVector> out;
  out.reserve(grid.size());
  evolve(state, h, grid, kind,
         [&](std::size_t, double, std::span<const cplx> psi) {
           out.emplace_back(state.num_rungs, std::vector<cplx>(psi.begin(), psi.end()));
         },
         krylov);
  return out;
}

std::vector<cplx> coefficients(std::span<const cplx> state, const std::vector<Index>& targets) {
  std::vector<cplx> out;
  out.reserve(targets.size());
  for (Index t : targets) {
    if (t >= state.size()) throw std::out_of_range("target index " + std::to_string(t) + " outside the state");
    out.push_back(state[t]);
  }
  return out;
}

}  // namespace zeno
