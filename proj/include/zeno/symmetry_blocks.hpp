#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zeno/sparse_operator.hpp"

namespace zeno {

/// Normalized symmetry-adapted basis vector with real coefficients.
struct AdaptedVector {
  std::vector<std::pair<Index, double>> terms;
};

/// One invariant block: a conserved label (e.g. a sector mask) together with
/// a character of the group generated by commuting involutive permutations.
struct SymmetryBlock {
  std::uint32_t label = 0;
  std::uint32_t character = 0;  // bit j set: eigenvalue -1 under generator j
  std::vector<AdaptedVector> columns;

  Eigen::Index size() const { return static_cast<Eigen::Index>(columns.size()); }
};

/// Orthogonal decomposition of the Hilbert space into blocks left invariant
/// by an operator. The columns of all blocks together form an orthonormal
/// basis.
class BlockStructure {
 public:
  /// labels[i] is a conserved label of basis state i; every generator must be
  /// an involution that commutes with the others and preserves labels.
  static BlockStructure build(Index dim, const std::vector<std::uint32_t>& labels,
                              const std::vector<std::vector<Index>>& generators);
  static BlockStructure trivial(Index dim);
  /// Uses rung-parity sectors when h conserves all of them, plus the leg
  /// swap and the global spin flip when h commutes with them.
  static BlockStructure for_operator(const SparseOperator& h, int num_rungs);

  Index dim() const { return dim_; }
  const std::vector<SymmetryBlock>& blocks() const { return blocks_; }
  /// Human-readable list of the symmetries used.
  const std::string& description() const { return description_; }

  /// Coordinates of psi inside block b.
  Eigen::VectorXcd project(std::size_t b, std::span<const cplx> psi) const;
  /// psi += Q_b coords
  void embed_add(std::size_t b, const Eigen::Ref<const Eigen::VectorXcd>& coords, std::span<cplx> psi) const;
  /// Q_b^T h Q_b for Hermitian h.
  Eigen::MatrixXcd block_matrix(std::size_t b, const SparseOperator& h) const;

 private:
  Index dim_ = 0;
  std::vector<SymmetryBlock> blocks_;
  std::string description_;
};

/// True if every nonzero of h connects basis states of equal sector.
bool conserves_rung_parities(const SparseOperator& h, int num_rungs);

}  // namespace zeno
