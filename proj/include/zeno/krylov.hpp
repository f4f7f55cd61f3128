#pragma once

#include <span>
#include <vector>

#include "zeno/dynamics.hpp"
#include "zeno/sparse_operator.hpp"

namespace zeno {

/// Lanczos propagator for exp(-i h t) with adaptive steps.
///
/// Each step builds an orthonormal Krylov basis with full
/// reorthogonalization, exponentiates the tridiagonal projection exactly and
/// accepts the largest step whose a-posteriori error estimate
/// beta_m |e_m^T exp(-i T tau) e_1| stays below the tolerance. Grid times
/// falling inside an accepted step are read off the same basis.
class KrylovPropagator {
 public:
  explicit KrylovPropagator(const SparseOperator& h, KrylovOptions options = {});

  void propagate(std::span<const cplx> psi0, std::span<const double> times, const StateSink& sink);

  std::size_t steps() const { return steps_; }
  std::size_t matvecs() const { return matvecs_; }

 private:
  const SparseOperator& h_;
  KrylovOptions options_;
  double scale_ = 1.0;
  std::size_t steps_ = 0;
  std::size_t matvecs_ = 0;
};

}  // namespace zeno
