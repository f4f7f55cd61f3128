#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zeno/symmetry_blocks.hpp"

namespace zeno {

/// Dense eigendecomposition of a Hermitian operator, block by block.
///
/// Real symmetric blocks are solved in real arithmetic, which halves the
/// propagation cost. Eigenvalues are exposed in ascending order across all blocks;
/// ties keep block order so the numbering is deterministic.
///
/// The solve runs in long double and the phases exp(-i E t) are reduced in
/// long double, so eigenvalue error times t stays small out to Jt ~ 1e12.
/// Vectors are stored in double; their rounding does not grow with t.
class DenseEigensystem {
 public:
  DenseEigensystem(const SparseOperator& h, BlockStructure blocks);
  /// Detects the symmetries of h on an L-rung ladder automatically.
  DenseEigensystem(const SparseOperator& h, int num_rungs);

  Index dim() const { return blocks_.dim(); }
  const BlockStructure& blocks() const { return blocks_; }
  const std::vector<double>& eigenvalues() const { return sorted_values_; }
  /// Eigenvector k (ascending numbering) in the computational basis.
  std::vector<cplx> eigenvector(std::size_t k) const;

  /// Coordinates <k|psi> in the ascending eigenbasis.
  Eigen::VectorXcd to_eigenbasis(std::span<const cplx> psi) const;

  /// Calls sink(i, t_i, psi(t_i)) with psi(t) = exp(-i h t) psi0 for every
  /// time, in order. Times are batched so the basis change is a GEMM.
  void propagate(std::span<const cplx> psi0, std::span<const double> times,
                 const std::function<void(std::size_t, double, std::span<const cplx>)>& sink) const;

 private:
  struct Block {
    Eigen::VectorXd values;
    std::vector<long double> precise_values;
    bool real = true;
    Eigen::MatrixXd real_vectors;
    Eigen::MatrixXcd complex_vectors;
  };
  struct Slot {
    std::size_t block;
    Eigen::Index local;
  };

  BlockStructure blocks_;
  std::vector<Block> spectra_;
  std::vector<double> sorted_values_;
  std::vector<Slot> order_;
};

/// In-place symmetric/Hermitian eigensolve; values ascending, vectors in columns.
void hermitian_eigen(Eigen::MatrixXd& a, Eigen::VectorXd& values);
void hermitian_eigen(Eigen::MatrixXcd& a, Eigen::VectorXd& values);
/// As above, solved in long double; `precise` receives the unrounded values.
void hermitian_eigen(Eigen::MatrixXd& a, Eigen::VectorXd& values, std::vector<long double>& precise);
void hermitian_eigen(Eigen::MatrixXcd& a, Eigen::VectorXd& values, std::vector<long double>& precise);

}  // namespace zeno
