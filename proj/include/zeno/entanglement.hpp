#pragma once

#include <span>

#include <Eigen/Dense>

#include "zeno/sparse_operator.hpp"

namespace zeno {

/// rho_A for subsystem A = rungs [0, cut).
struct ReducedDensityMatrix {
  Eigen::MatrixXcd matrix;
  int cut = 0;

  double trace() const { return matrix.trace().real(); }
};

/// Eigenvalues at or below this count as zero in the entropy sum.
inline constexpr double kEntropyClamp = 1e-14;

/// Partial trace over rungs [cut, L): with the rung-0-least-significant
/// layout the amplitudes already form the 4^cut x 4^(L-cut) matrix M
/// column-major, and rho_A = M M^dagger.
ReducedDensityMatrix reduced_density_matrix(std::span<const cplx> state, int num_rungs, int cut);

/// -sum_i E_i ln E_i in nats. Throws if the trace is off by more than 1e-8.
double von_neumann_entropy(const ReducedDensityMatrix& rho);

/// Same entropy from the singular values of M (independent path).
double schmidt_entropy(std::span<const cplx> state, int num_rungs, int cut);

/// Mean entanglement of a Haar-random state, ln d_A - d_A / (2 d_B).
double page_value(double dim_a, double dim_b);

/// -sum p ln p over probabilities, with the clamp above.
double entropy_of_spectrum(const Eigen::Ref<const Eigen::VectorXd>& probabilities);

/// Mid-chain entropy through the partial-trace path; cut defaults to L/2.
double mid_chain_entropy(std::span<const cplx> state, int num_rungs, int cut = 0);

}  // namespace zeno
