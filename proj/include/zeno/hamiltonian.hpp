#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zeno/basis.hpp"
#include "zeno/sparse_operator.hpp"

namespace zeno {

enum class PerturbationKind { None, Transverse, Heisenberg };

PerturbationKind parse_perturbation(std::string_view name);
std::string to_string(PerturbationKind kind);

struct ModelParams {
  double J = 1.0;
  double lambda = 0.0;
  double V = 0.0;
  double epsilon = 0.0;
  /// Protection sequence; empty means no protection term.
  std::vector<int> c;

  void validate(int num_rungs) const;
};

// Pauli conventions: sigma occupies bit 2i+1 and tau bit 2i of the basis
// index; a set bit is the +1 eigenvalue of the z operator.

/// -J sum_i (sz_i sz_{i+1} + tz_i tz_{i+1}) - J sum_i sx_i tx_i, open boundaries.
SparseOperator build_h0(int num_rungs, double J = 1.0);
/// Diagonal inter-rung part of h0 only.
SparseOperator build_h0_diagonal(int num_rungs, double J = 1.0);

/// transverse: lambda sum_i (sx_i + tx_i)
/// heisenberg: lambda sum_i (sx sx + sy sy + tx tx + ty ty)_{i,i+1}
SparseOperator build_perturbation(PerturbationKind kind, int num_rungs, double lambda);

/// V sum_i c_i sz_i tz_i
SparseOperator build_protection(int num_rungs, double V, const std::vector<int>& c);

/// -epsilon sum_i tz_i tz_{i+1}; breaks the sigma <-> tau leg symmetry.
SparseOperator build_mirror_breaker(int num_rungs, double epsilon);

/// Basis permutation exchanging sigma_i and tau_i on every rung.
std::vector<Index> mirror_swap_permutation(int num_rungs);
SparseOperator build_mirror_swap(int num_rungs);

/// Basis permutation of prod_i sx_i tx_i (flip every spin).
std::vector<Index> global_flip_permutation(int num_rungs);

/// sz_i tz_i on one rung.
SparseOperator build_rung_parity(int num_rungs, int rung);
/// prod_{i in string} sx_i tx_i, the string Z2 symmetry.
SparseOperator build_string_flip(int num_rungs, const StringSegment& string);

/// H0 + H1 + H_V + mirror breaker for the given parameters.
SparseOperator build_hamiltonian(int num_rungs, PerturbationKind kind, const ModelParams& params);

/// H_Z = h0 + sum_S P_S h1 P_S, or h0 + P_S0 h1 P_S0 when restrict_to is set.
SparseOperator build_zeno_hamiltonian(const SparseOperator& h0, const SparseOperator& h1,
                                      const ZenoSubspaces& subspaces, std::optional<int> restrict_to = std::nullopt);

struct ConservationReport {
  /// max |[h, sz_i tz_i]| per rung
  std::vector<double> rung_commutators;
  /// max |[h, prod_{i in s} sx_i tx_i]| per string of the requested sector
  std::vector<double> string_commutators;
  /// max |[h, mirror swap]|
  double mirror_commutator = 0.0;

  double max_rung() const;
  double max_string() const;
};

ConservationReport verify_conservation(const SparseOperator& h, int num_rungs,
                                       const std::optional<SectorLabel>& sector = std::nullopt);

/// Restriction of an operator to the given basis indices (row/col order as given).
Eigen::MatrixXcd restrict_to_indices(const SparseOperator& h, const std::vector<Index>& indices);

}  // namespace zeno
