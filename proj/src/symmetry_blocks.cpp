#include "zeno/symmetry_blocks.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "zeno/hamiltonian.hpp"

namespace zeno {

BlockStructure BlockStructure::build(Index dim, const std::vector<std::uint32_t>& labels,
                                     const std::vector<std::vector<Index>>& generators) {
  if (labels.size() != dim) throw std::invalid_argument("label count does not match dimension");
  if (generators.size() > 8) throw std::invalid_argument("too many symmetry generators");
  for (const auto& g : generators) {
    if (g.size() != dim) throw std::invalid_argument("generator length does not match dimension");
  }

  // Group elements indexed by the subset of generators they contain.
  const std::size_t group_size = std::size_t{1} << generators.size();
  std::vector<std::vector<Index>> elements(group_size, std::vector<Index>(dim));
  for (Index i = 0; i < dim; ++i) elements[0][i] = i;
  for (std::size_t e = 1; e < group_size; ++e) {
    const auto j = static_cast<std::size_t>(std::countr_zero(e));
    const auto& prev = elements[e & (e - 1)];
    for (Index i = 0; i < dim; ++i) elements[e][i] = generators[j][prev[i]];
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, SymmetryBlock> keyed;
  std::vector<bool> visited(dim, false);
  std::map<Index, double> acc;
  for (Index rep = 0; rep < dim; ++rep) {
    if (visited[rep]) continue;
    for (std::size_t e = 0; e < group_size; ++e) {
      const Index img = elements[e][rep];
      if (labels[img] != labels[rep]) throw std::invalid_argument("symmetry generator does not preserve labels");
      visited[img] = true;
    }
    for (std::uint32_t chi = 0; chi < group_size; ++chi) {
      acc.clear();
      for (std::size_t e = 0; e < group_size; ++e) {
        const double sign = (std::popcount(static_cast<std::uint32_t>(e) & chi) % 2) ? -1.0 : 1.0;
        acc[elements[e][rep]] += sign;
      }
      double norm2 = 0.0;
      AdaptedVector v;
      for (auto [idx, coef] : acc) {
        if (coef != 0.0) {
          v.terms.emplace_back(idx, coef);
          norm2 += coef * coef;
        }
      }
      if (v.terms.empty()) continue;
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& t : v.terms) t.second *= inv;
      auto& block = keyed[{labels[rep], chi}];
      block.label = labels[rep];
      block.character = chi;
      block.columns.push_back(std::move(v));
    }
  }

  BlockStructure out;
  out.dim_ = dim;
  out.blocks_.reserve(keyed.size());
  for (auto& [key, block] : keyed) out.blocks_.push_back(std::move(block));
  return out;
}

BlockStructure BlockStructure::trivial(Index dim) {
  auto out = build(dim, std::vector<std::uint32_t>(dim, 0), {});
  out.description_ = "none";
  return out;
}

bool conserves_rung_parities(const SparseOperator& h, int num_rungs) {
  bool ok = true;
  h.for_each([&](Index r, Index c, cplx) {
    if (ok && sector_mask_of(r, num_rungs) != sector_mask_of(c, num_rungs)) ok = false;
  });
  return ok;
}

BlockStructure BlockStructure::for_operator(const SparseOperator& h, int num_rungs) {
  const Index dim = hilbert_dimension(num_rungs);
  if (h.dim() != dim) throw std::invalid_argument("operator dimension does not match L");
  std::vector<std::uint32_t> labels(dim, 0);
  std::string desc;
  if (conserves_rung_parities(h, num_rungs)) {
    for (Index i = 0; i < dim; ++i) labels[i] = sector_mask_of(i, num_rungs);
    desc = "sectors";
  }
  std::vector<std::vector<Index>> gens;
  if (auto swap = mirror_swap_permutation(num_rungs); commutes_with_permutation(h, swap)) {
    gens.push_back(std::move(swap));
    desc += desc.empty() ? "leg-swap" : "+leg-swap";
  }
  if (auto flip = global_flip_permutation(num_rungs); commutes_with_permutation(h, flip)) {
    gens.push_back(std::move(flip));
    desc += desc.empty() ? "global-flip" : "+global-flip";
  }
  auto out = build(dim, labels, gens);
  out.description_ = desc.empty() ? "none" : desc;
  return out;
}

Eigen::VectorXcd BlockStructure::project(std::size_t b, std::span<const cplx> psi) const {
  const auto& block = blocks_.at(b);
  Eigen::VectorXcd out(block.size());
  for (Eigen::Index j = 0; j < block.size(); ++j) {
    cplx s{0.0, 0.0};
    for (auto [idx, q] : block.columns[j].terms) s += q * psi[idx];
    out[j] = s;
  }
  return out;
}

void BlockStructure::embed_add(std::size_t b, const Eigen::Ref<const Eigen::VectorXcd>& coords,
                               std::span<cplx> psi) const {
  const auto& block = blocks_.at(b);
  for (Eigen::Index j = 0; j < block.size(); ++j) {
    for (auto [idx, q] : block.columns[j].terms) psi[idx] += q * coords[j];
  }
}

Eigen::MatrixXcd BlockStructure::block_matrix(std::size_t b, const SparseOperator& h) const {
  const auto& block = blocks_.at(b);
  const Eigen::Index n = block.size();
  std::vector<int> col_of(dim_, -1);
  std::vector<double> coef_of(dim_, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (auto [idx, q] : block.columns[j].terms) {
      col_of[idx] = static_cast<int>(j);
      coef_of[idx] = q;
    }
  }
  // M(i, j) = sum_{a in v_i, b in v_j} q_a q_b H(a, b), with H(a, b) = conj(H(b, a)).
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const auto& csr = h.csr();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (auto [bidx, qb] : block.columns[j].terms) {
      for (CsrMatrix::InnerIterator it(csr, static_cast<int>(bidx)); it; ++it) {
        const int i = col_of[it.col()];
        if (i >= 0) m(i, j) += coef_of[it.col()] * qb * std::conj(it.value());
      }
    }
  }
  return m;
}

}  // namespace zeno
