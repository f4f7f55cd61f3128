#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "zeno/sparse_operator.hpp"
#include "zeno/time_grid.hpp"

namespace zeno {

/// First-order Rayleigh-Schroedinger dressing of the eigenbasis of a
/// sector-diagonal Hamiltonian by a sector off-diagonal perturbation:
///
///   |i'> = |i> + lambda sum_{j != i} <j|h1|i> / (E_i - E_j) |j>
///
/// with h1 at unit strength. The numerator carries the matrix element of
/// the perturbation between unperturbed eigenstates.
class PerturbedBasis {
 public:
  Index dim() const { return static_cast<Index>(energies_.size()); }
  double lambda() const { return lambda_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  /// Columns are the unperturbed eigenstates |i> in the computational basis.
  const Eigen::MatrixXcd& unperturbed() const { return vectors_; }
  /// K_{ji} = <j|h1|i> / (E_i - E_j), zero on the diagonal. Anti-Hermitian.
  const Eigen::MatrixXcd& mixing() const { return mixing_; }

  /// M = 1 + lambda K; column i holds |i'> in the unperturbed basis.
  Eigen::MatrixXcd forward() const;
  /// M' = 1 - lambda K, the first-order inverse: |i> = sum_j M'_{ji} |j'>.
  Eigen::MatrixXcd inverse() const;
  /// |i'> in the computational basis.
  std::vector<cplx> perturbed_state(Index i) const;

  /// First-order estimate of exp(-i H t)|psi0>: expand psi0 in the dressed
  /// basis with M', attach unperturbed phases, and map back with M. The
  /// result is renormalized.
  std::vector<cplx> propagate(std::span<const cplx> psi0, double t) const;

  /// Largest |lambda K_{ji}|, the size of the first-order admixture.
  double max_admixture() const;

 private:
  friend PerturbedBasis pt_first_order(const SparseOperator&, const SparseOperator&, double, int, double);

  double lambda_ = 0.0;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
  Eigen::MatrixXcd mixing_;
};

/// Builds the first-order map. Pairs with |E_i - E_j| < 1e-6 * gap_scale
/// and a nonzero coupling make the expansion meaningless and raise
/// NumericalError. gap_scale defaults to the largest diagonal magnitude of
/// h_diag. Dense; intended for L <= 5.
PerturbedBasis pt_first_order(const SparseOperator& h_diag, const SparseOperator& h1_unit, double lambda, int num_rungs,
                              double gap_scale = 0.0);

/// Mean mid-chain entropy of the first-order propagated state over a grid.
double predicted_plateau_entropy(const PerturbedBasis& pt, std::span<const cplx> psi0, int num_rungs,
                                 std::span<const double> times);

}  // namespace zeno
