#include "zeno/hamiltonian.hpp"

#include <algorithm>
#include <stdexcept>

namespace zeno {

namespace {

constexpr Index sigma_bit(int rung) { return Index{2} << (2 * rung); }
constexpr Index tau_bit(int rung) { return Index{1} << (2 * rung); }
constexpr Index rung_bits(int rung) { return Index{3} << (2 * rung); }

inline double z(Index idx, Index bit) { return (idx & bit) ? 1.0 : -1.0; }

}  // namespace

PerturbationKind parse_perturbation(std::string_view name) {
  if (name == "none" || name.empty()) return PerturbationKind::None;
  if (name == "transverse") return PerturbationKind::Transverse;
  if (name == "heisenberg") return PerturbationKind::Heisenberg;
  throw std::invalid_argument("unknown perturbation kind '" + std::string(name) + "'");
}

std::string to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::None: return "none";
    case PerturbationKind::Transverse: return "transverse";
    case PerturbationKind::Heisenberg: return "heisenberg";
  }
  return "none";
}

void ModelParams::validate(int num_rungs) const {
  if (!(J > 0.0)) throw std::invalid_argument("J must be positive");
  if (lambda < 0.0 || V < 0.0 || epsilon < 0.0) throw std::invalid_argument("lambda, V and epsilon must be >= 0");
  if (!c.empty() && static_cast<int>(c.size()) != num_rungs) {
    throw std::invalid_argument("protection sequence length does not match the number of rungs");
  }
}

SparseOperator build_h0_diagonal(int num_rungs, double J) {
  check_num_rungs(num_rungs);
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<double> d(dim, 0.0);
  for (Index idx = 0; idx < dim; ++idx) {
    double e = 0.0;
    for (int i = 0; i + 1 < num_rungs; ++i) {
      e += z(idx, sigma_bit(i)) * z(idx, sigma_bit(i + 1)) + z(idx, tau_bit(i)) * z(idx, tau_bit(i + 1));
    }
    d[idx] = -J * e;
  }
  return SparseOperator::diagonal(d);
}

SparseOperator build_h0(int num_rungs, double J) {
  check_num_rungs(num_rungs);
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<Triplet> t;
  t.reserve(dim * (num_rungs + 1));
  for (Index idx = 0; idx < dim; ++idx) {
    double e = 0.0;
    for (int i = 0; i + 1 < num_rungs; ++i) {
      e += z(idx, sigma_bit(i)) * z(idx, sigma_bit(i + 1)) + z(idx, tau_bit(i)) * z(idx, tau_bit(i + 1));
    }
    t.push_back({idx, idx, -J * e});
    for (int i = 0; i < num_rungs; ++i) t.push_back({idx ^ rung_bits(i), idx, -J});
  }
  return SparseOperator::from_triplets(dim, t);
}

SparseOperator build_perturbation(PerturbationKind kind, int num_rungs, double lambda) {
  check_num_rungs(num_rungs);
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<Triplet> t;
  switch (kind) {
    case PerturbationKind::None:
      return SparseOperator::zero(dim);
    case PerturbationKind::Transverse:
      t.reserve(dim * 2 * num_rungs);
      for (Index idx = 0; idx < dim; ++idx) {
        for (int i = 0; i < num_rungs; ++i) {
          t.push_back({idx ^ sigma_bit(i), idx, lambda});
          t.push_back({idx ^ tau_bit(i), idx, lambda});
        }
      }
      break;
    case PerturbationKind::Heisenberg:
      if (num_rungs < 2) throw std::invalid_argument("heisenberg perturbation needs at least two rungs");
      // xx + yy = 2 (s+ s- + s- s+): hops an anti-aligned pair with amplitude 2.
      for (Index idx = 0; idx < dim; ++idx) {
        for (int i = 0; i + 1 < num_rungs; ++i) {
          for (auto [a, b] : {std::pair{sigma_bit(i), sigma_bit(i + 1)}, std::pair{tau_bit(i), tau_bit(i + 1)}}) {
            if (((idx & a) != 0) != ((idx & b) != 0)) t.push_back({idx ^ a ^ b, idx, 2.0 * lambda});
          }
        }
      }
      break;
  }
  return SparseOperator::from_triplets(dim, t);
}

SparseOperator build_protection(int num_rungs, double V, const std::vector<int>& c) {
  check_num_rungs(num_rungs);
  const auto z = zeno_subspaces(c, num_rungs);
  const auto plateau = z.plateau_per_basis_state();
  std::vector<double> d(plateau.size());
  std::transform(plateau.begin(), plateau.end(), d.begin(), [V](int m) { return V * m; });
  return SparseOperator::diagonal(d);
}

SparseOperator build_mirror_breaker(int num_rungs, double epsilon) {
  check_num_rungs(num_rungs);
  if (num_rungs < 2) throw std::invalid_argument("mirror breaker needs at least two rungs");
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<double> d(dim, 0.0);
  for (Index idx = 0; idx < dim; ++idx) {
    double e = 0.0;
    for (int i = 0; i + 1 < num_rungs; ++i) e += z(idx, tau_bit(i)) * z(idx, tau_bit(i + 1));
    d[idx] = -epsilon * e;
  }
  return SparseOperator::diagonal(d);
}

std::vector<Index> mirror_swap_permutation(int num_rungs) {
  check_num_rungs(num_rungs);
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<Index> perm(dim);
  for (Index idx = 0; idx < dim; ++idx) {
    Index out = 0;
    for (int i = 0; i < num_rungs; ++i) {
      if (idx & sigma_bit(i)) out |= tau_bit(i);
      if (idx & tau_bit(i)) out |= sigma_bit(i);
    }
    perm[idx] = out;
  }
  return perm;
}

SparseOperator build_mirror_swap(int num_rungs) { return SparseOperator::permutation(mirror_swap_permutation(num_rungs)); }

std::vector<Index> global_flip_permutation(int num_rungs) {
  check_num_rungs(num_rungs);
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<Index> perm(dim);
  for (Index idx = 0; idx < dim; ++idx) perm[idx] = idx ^ (dim - 1);
  return perm;
}

SparseOperator build_rung_parity(int num_rungs, int rung) {
  check_num_rungs(num_rungs);
  if (rung < 0 || rung >= num_rungs) throw std::out_of_range("rung index out of range");
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<double> d(dim);
  for (Index idx = 0; idx < dim; ++idx) d[idx] = z(idx, sigma_bit(rung)) * z(idx, tau_bit(rung));
  return SparseOperator::diagonal(d);
}

SparseOperator build_string_flip(int num_rungs, const StringSegment& string) {
  check_num_rungs(num_rungs);
  if (string.start < 0 || string.length < 1 || string.start + string.length > num_rungs) {
    throw std::out_of_range("string outside the ladder");
  }
  Index mask = 0;
  for (int i = string.start; i < string.start + string.length; ++i) mask |= rung_bits(i);
  const Index dim = hilbert_dimension(num_rungs);
  std::vector<Index> perm(dim);
  for (Index idx = 0; idx < dim; ++idx) perm[idx] = idx ^ mask;
  return SparseOperator::permutation(perm);
}

SparseOperator build_hamiltonian(int num_rungs, PerturbationKind kind, const ModelParams& params) {
  params.validate(num_rungs);
  SparseOperator h = build_h0(num_rungs, params.J);
  if (kind != PerturbationKind::None && params.lambda != 0.0) h = h + build_perturbation(kind, num_rungs, params.lambda);
  if (!params.c.empty() && params.V != 0.0) h = h + build_protection(num_rungs, params.V, params.c);
  if (params.epsilon != 0.0) h = h + build_mirror_breaker(num_rungs, params.epsilon);
  return h;
}

SparseOperator build_zeno_hamiltonian(const SparseOperator& h0, const SparseOperator& h1,
                                      const ZenoSubspaces& subspaces, std::optional<int> restrict_to) {
  if (h0.dim() != h1.dim()) throw std::invalid_argument("h0 and h1 dimensions differ");
  if (h0.dim() != hilbert_dimension(subspaces.num_rungs())) {
    throw std::invalid_argument("operator dimension does not match the Zeno subspaces");
  }
  const auto plateau = subspaces.plateau_per_basis_state();
  std::vector<Triplet> kept;
  h1.for_each([&](Index r, Index c, cplx v) {
    if (plateau[r] != plateau[c]) return;
    if (restrict_to && plateau[r] != *restrict_to) return;
    kept.push_back({r, c, v});
  });
  return h0 + SparseOperator::from_triplets(h1.dim(), kept);
}

double ConservationReport::max_rung() const {
  return rung_commutators.empty() ? 0.0 : *std::max_element(rung_commutators.begin(), rung_commutators.end());
}

double ConservationReport::max_string() const {
  return string_commutators.empty() ? 0.0 : *std::max_element(string_commutators.begin(), string_commutators.end());
}

ConservationReport verify_conservation(const SparseOperator& h, int num_rungs, const std::optional<SectorLabel>& sector) {
  check_num_rungs(num_rungs);
  if (h.dim() != hilbert_dimension(num_rungs)) throw std::invalid_argument("operator dimension does not match L");
  ConservationReport report;
  for (int i = 0; i < num_rungs; ++i) report.rung_commutators.push_back(commutator_norm(h, build_rung_parity(num_rungs, i)));
  report.mirror_commutator = commutator_norm(h, build_mirror_swap(num_rungs));
  if (sector) {
    if (sector->num_rungs() != num_rungs) throw std::invalid_argument("sector length does not match L");
    // String flips are symmetries of the sector block only: project the
    // commutator onto the sector before measuring it.
    const auto mask = sector->mask();
    for (const auto& s : string_decomposition(*sector).strings) {
      const auto flip = build_string_flip(num_rungs, s);
      const auto comm = h * flip - flip * h;
      double worst = 0.0;
      comm.for_each([&](Index r, Index c, cplx v) {
        if (sector_mask_of(r, num_rungs) == mask && sector_mask_of(c, num_rungs) == mask) worst = std::max(worst, std::abs(v));
      });
      report.string_commutators.push_back(worst);
    }
  }
  return report;
}

Eigen::MatrixXcd restrict_to_indices(const SparseOperator& h, const std::vector<Index>& indices) {
  const auto n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = h.at(indices[i], indices[j]);
  }
  return out;
}

}  // namespace zeno
