#include <doctest.h>

#include <cmath>
#include <random>

#include "zeno/dynamics.hpp"
#include "zeno/entanglement.hpp"
#include "zeno/errors.hpp"
#include "zeno/hamiltonian.hpp"
#include "zeno/krylov.hpp"
#include "zeno/quench.hpp"

using namespace zeno;

namespace {

double distance(std::span<const cplx> a, std::span<const cplx> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - b[i]);
  return std::sqrt(d);
}

StateVector random_state(int L, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(hilbert_dimension(L));
  double n2 = 0.0;
  for (auto& z : v) {
    z = {g(rng), g(rng)};
    n2 += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(n2);
  return {L, std::move(v)};
}

}  // namespace

TEST_CASE("sector product states") {
  const auto sector = SectorLabel::parse("+++");
  RungAngles zero{{0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}};
  const auto s = sector_product_state(sector, zero);
  CHECK(std::abs(s.amplitudes[parse_bit_string("000000").index] - 1.0) < 1e-15);

  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto label = SectorLabel::parse("+-+--+");
    const auto a = random_sector_product_state(label, seed);
    const auto b = random_sector_product_state(label, seed);
    CHECK(a.amplitudes == b.amplitudes);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sector_population(a, label) == doctest::Approx(1.0).epsilon(1e-14));
    for (Index i = 0; i < a.dim(); ++i) {
      if (a.amplitudes[i] != cplx(0.0, 0.0)) CHECK(sector_mask_of(i, 6) == label.mask());
    }
  }
  const auto angles = draw_rung_angles(16, 5);
  for (int i = 0; i < 16; ++i) {
    CHECK(angles.theta[i] >= 0.0);
    CHECK(angles.theta[i] <= M_PI / 2);
    CHECK(angles.phi[i] >= 0.0);
    CHECK(angles.phi[i] < 2 * M_PI);
  }
  CHECK(random_sector_product_state(SectorLabel::parse("++"), 1).amplitudes !=
        random_sector_product_state(SectorLabel::parse("++"), 2).amplitudes);
}

TEST_CASE("sector ground states") {
  const auto g2 = sector_ground_state(SectorLabel::parse("+-"), build_h0(2));
  for (const char* b : {"0001", "0010", "1101", "1110"}) {
    CHECK(std::abs(g2.state.amplitudes[parse_bit_string(b).index] - 0.5) < 1e-12);
  }
  CHECK_FALSE(g2.degenerate);

  const auto sector = SectorLabel::parse("+-+-");
  const auto g4 = sector_ground_state(sector, build_h0(4));
  for (Index i : sector_basis(sector)) CHECK(std::abs(g4.state.amplitudes[i] - 0.25) < 1e-12);
  CHECK(g4.energy == doctest::Approx(-4.0));

  // ++ at L=2: the transverse-field Ising pair, ground energy -sqrt(8).
  const auto gpp = sector_ground_state(SectorLabel::parse("++"), build_h0(2));
  CHECK(gpp.energy == doctest::Approx(-std::sqrt(8.0)).epsilon(1e-12));
  CHECK(sector_population(gpp.state, SectorLabel::parse("++")) == doctest::Approx(1.0));

  CHECK_FALSE(sector_ground_state(SectorLabel::parse("-"), build_h0(1)).degenerate);
  // Zero Hamiltonian: every sector vector is a ground state.
  CHECK(sector_ground_state(SectorLabel::parse("++"), SparseOperator::zero(16)).degenerate);
}

TEST_CASE("dense and krylov propagation agree") {
  ModelParams p;
  p.lambda = 0.3;
  p.V = 4.0;
  p.epsilon = 0.1;
  const auto grid = TimeGrid::log(200.0, 60);
  for (int L : {2, 3, 4}) {
    p.c.assign(L, 1);
    p.c[0] = -1;
    for (auto kind : {PerturbationKind::Transverse, PerturbationKind::Heisenberg}) {
      CAPTURE(L);
      const auto h = build_hamiltonian(L, kind, p);
      const auto psi = random_state(L, 11 + L);
      const auto dense = evolve(psi, h, grid, EvolverKind::Dense);
      const auto krylov = evolve(psi, h, grid, EvolverKind::Krylov);
      double worst = 0.0, drift = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        worst = std::max(worst, distance(dense[k].view(), krylov[k].view()));
        drift = std::max({drift, std::abs(dense[k].norm() - 1.0), std::abs(krylov[k].norm() - 1.0)});
      }
      CHECK(worst <= 1e-8);
      CHECK(drift <= 1e-10);
    }
  }
}

TEST_CASE("stationary states and conservation") {
  const auto h0 = build_h0(3);
  const auto g = sector_ground_state(SectorLabel::parse("+-+"), h0);
  const auto grid = TimeGrid::linear(40.0, 9);
  for (auto kind : {EvolverKind::Dense, EvolverKind::Krylov}) {
    evolve(g.state, h0, grid, kind, [&](std::size_t, double, std::span<const cplx> psi) {
      cplx overlap{0.0, 0.0};
      for (std::size_t i = 0; i < psi.size(); ++i) overlap += std::conj(g.state.amplitudes[i]) * psi[i];
      CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-10));
    });
  }

  ModelParams p;
  p.V = 7.0;
  p.c = {1, 1, -1};
  p.epsilon = 0.1;
  const auto h = build_hamiltonian(3, PerturbationKind::None, p);
  const auto sector = SectorLabel::parse("+-+");
  const auto psi = random_sector_product_state(sector, 4);
  for (const auto& s : evolve(psi, h, TimeGrid::log(1e4, 40), EvolverKind::Dense)) {
    CHECK(sector_population(s, sector) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Energy conservation under a sector-mixing Hamiltonian.
  p.lambda = 0.4;
  const auto hm = build_hamiltonian(3, PerturbationKind::Transverse, p);
  const auto energy = [&](std::span<const cplx> x) {
    const auto hx = hm.apply(x);
    cplx e{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) e += std::conj(x[i]) * hx[i];
    return e.real();
  };
  const double e0 = energy(psi.view());
  for (const auto& s : evolve(psi, hm, TimeGrid::log(1e3, 30), EvolverKind::Krylov)) {
    CHECK(std::abs(energy(s.view()) - e0) <= 1e-8 * std::abs(e0));
  }
}

TEST_CASE("late-time phases") {
  // exp(-i H0 t) keeps an uncut string product state exactly unentangled; any
  // eigenvalue error shows up as S ~ (dE t)^2.
  const auto psi = random_sector_product_state(SectorLabel::parse("++--"), 3);
  ModelParams p;
  p.V = 200.0;
  p.c = {1, 1, -1, -1};
  const DenseEigensystem eig(build_hamiltonian(4, PerturbationKind::None, p), 4);
  const std::vector<double> times{1e6, 1e8, 1e10};
  eig.propagate(psi.view(), times, [&](std::size_t, double, std::span<const cplx> x) {
    double n2 = 0.0;
    for (auto z : x) n2 += std::norm(z);
    CHECK(std::abs(n2 - 1.0) <= 1e-12);
    CHECK(schmidt_entropy(x, 4, 2) <= 1e-10);
  });

  // Blocked and unblocked solves agree on the slow dynamics.
  p.lambda = 0.1;
  const auto h = build_hamiltonian(4, PerturbationKind::Transverse, p);
  const DenseEigensystem blocked(h, 4);
  const DenseEigensystem plain(h, BlockStructure::trivial(h.dim()));
  std::vector<double> a, b;
  blocked.propagate(psi.view(), times, [&](std::size_t, double, std::span<const cplx> x) { a.push_back(schmidt_entropy(x, 4, 2)); });
  plain.propagate(psi.view(), times, [&](std::size_t, double, std::span<const cplx> x) { b.push_back(schmidt_entropy(x, 4, 2)); });
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-3 * b[k] + 1e-12);
}

TEST_CASE("evolve contract violations") {
  const auto h = build_h0(2);
  StateVector bad(2, std::vector<cplx>(16, cplx{0.5, 0.0}));
  CHECK_THROWS_AS(evolve(bad, h, TimeGrid::linear(1.0, 3), EvolverKind::Dense), std::invalid_argument);

  const auto nonherm = SparseOperator::from_triplets(16, {{0, 1, {1.0, 0.0}}});
  const auto psi = random_sector_product_state(SectorLabel::parse("++"), 1);
  CHECK_THROWS_AS(evolve(psi, nonherm, TimeGrid::linear(1.0, 3), EvolverKind::Dense), std::invalid_argument);
  CHECK_THROWS_AS(evolve(psi, nonherm, TimeGrid::linear(1.0, 3), EvolverKind::Krylov), std::invalid_argument);

  // A Krylov space of dimension 2 cannot meet the tolerance for any finite step.
  KrylovOptions tiny;
  tiny.max_dimension = 2;
  ModelParams p;
  p.lambda = 0.5;
  const auto hm = build_hamiltonian(3, PerturbationKind::Transverse, p);
  CHECK_THROWS_AS(evolve(random_sector_product_state(SectorLabel::parse("+++"), 1), hm, TimeGrid::linear(50.0, 3),
                         EvolverKind::Krylov, tiny),
                  NumericalError);

  CHECK(coefficients(psi.view(), {0, 3})[0] == psi.amplitudes[0]);
  CHECK_THROWS_AS(coefficients(psi.view(), {16}), std::out_of_range);
}

TEST_CASE("time grids") {
  const auto g = TimeGrid::log(1e3, TimeGrid::default_points(1e3));
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(TimeGrid::kLogStart));
  CHECK(g.back() == doctest::Approx(1e3));
  CHECK(g.size() == 1002);
  CHECK_THROWS(TimeGrid({1.0, 1.0}));
  CHECK_THROWS(TimeGrid({-1.0, 1.0}));
  CHECK_THROWS(TimeGrid::linear(1.0, 1));
  CHECK(TimeGrid::linear(2.0, 3)[1] == 1.0);
}

TEST_CASE("quench runner") {
  QuenchSpec q;
  q.num_rungs = 4;
  q.sector = SectorLabel::parse("+-+-");
  q.init = InitKind::SectorGround;
  q.grid = TimeGrid::log(100.0, 50);
  const auto s = run_quench(q);
  CHECK(s.size() == 50);
  for (double e : s.entropies) CHECK(e <= 1e-10);

  q.init = InitKind::Explicit;
  q.explicit_support = {parse_bit_string("00010001").index, parse_bit_string("00011101").index};
  const auto psi = initial_state(q);
  CHECK(std::abs(psi.amplitudes[q.explicit_support[1]] - 1.0 / std::sqrt(2.0)) < 1e-15);
  q.explicit_support = {0, 0};
  CHECK_THROWS(initial_state(q));
  q.cut = 4;
  CHECK_THROWS(q.validate());
}
