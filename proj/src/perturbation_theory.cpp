#include "zeno/perturbation_theory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zeno/eigensystem.hpp"
#include "zeno/entanglement.hpp"
#include "zeno/errors.hpp"

namespace zeno {

Eigen::MatrixXcd PerturbedBasis::forward() const {
  return Eigen::MatrixXcd::Identity(mixing_.rows(), mixing_.cols()) + lambda_ * mixing_;
}

Eigen::MatrixXcd PerturbedBasis::inverse() const {
  return Eigen::MatrixXcd::Identity(mixing_.rows(), mixing_.cols()) - lambda_ * mixing_;
}

std::vector<cplx> PerturbedBasis::perturbed_state(Index i) const {
  if (i >= dim()) throw std::out_of_range("eigenstate index out of range");
  const Eigen::VectorXcd col = vectors_ * forward().col(static_cast<Eigen::Index>(i));
  return {col.data(), col.data() + col.size()};
}

std::vector<cplx> PerturbedBasis::propagate(std::span<const cplx> psi0, double t) const {
  if (psi0.size() != dim()) throw std::invalid_argument("state length does not match the perturbed basis");
  const Eigen::Map<const Eigen::VectorXcd> psi(psi0.data(), static_cast<Eigen::Index>(psi0.size()));
  // Coordinates of psi0 in the dressed basis, to first order.
  Eigen::VectorXcd b = inverse() * (vectors_.adjoint() * psi);
  for (Eigen::Index k = 0; k < b.size(); ++k) b[k] *= std::polar(1.0, -energies_[k] * t);
  Eigen::VectorXcd out = vectors_ * (forward() * b);
  out.normalize();
  return {out.data(), out.data() + out.size()};
}

double PerturbedBasis::max_admixture() const { return std::abs(lambda_) * mixing_.cwiseAbs().maxCoeff(); }

PerturbedBasis pt_first_order(const SparseOperator& h_diag, const SparseOperator& h1_unit, double lambda, int num_rungs,
                              double gap_scale) {
  if (h_diag.dim() != h1_unit.dim()) throw std::invalid_argument("h_diag and h1 dimensions differ");
  if (h_diag.dim() > 1024) throw std::invalid_argument("first-order perturbation theory is dense; use L <= 5");
  if (gap_scale <= 0.0) {
    for (Index i = 0; i < h_diag.dim(); ++i) gap_scale = std::max(gap_scale, std::abs(h_diag.at(i, i)));
    if (gap_scale <= 0.0) gap_scale = 1.0;
  }

  const DenseEigensystem eig(h_diag, num_rungs);
  PerturbedBasis pt;
  pt.lambda_ = lambda;
  const auto n = static_cast<Eigen::Index>(eig.dim());
  pt.energies_.resize(n);
  pt.vectors_.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    pt.energies_[k] = eig.eigenvalues()[k];
    const auto v = eig.eigenvector(static_cast<std::size_t>(k));
    pt.vectors_.col(k) = Eigen::Map<const Eigen::VectorXcd>(v.data(), n);
  }

  const Eigen::MatrixXcd h1 = h1_unit.to_dense();
  const Eigen::MatrixXcd coupling = pt.vectors_.adjoint() * h1 * pt.vectors_;
  pt.mixing_ = Eigen::MatrixXcd::Zero(n, n);
  const double coupling_floor = 1e-12 * std::max(1.0, h1_unit.max_abs());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || std::abs(coupling(j, i)) <= coupling_floor) continue;
      const double gap = pt.energies_[i] - pt.energies_[j];
      if (std::abs(gap) < 1e-6 * gap_scale) {
        std::ostringstream msg;
        msg << "first-order perturbation theory inapplicable: states " << i << " and " << j << " are coupled ("
            << std::abs(coupling(j, i)) << ") but nearly degenerate (gap " << gap << ")";
        throw NumericalError(msg.str());
      }
      pt.mixing_(j, i) = coupling(j, i) / gap;
    }
  }
  return pt;
}

double predicted_plateau_entropy(const PerturbedBasis& pt, std::span<const cplx> psi0, int num_rungs,
                                 std::span<const double> times) {
  if (times.empty()) throw std::invalid_argument("prediction needs at least one time");
  double sum = 0.0;
  for (double t : times) {
    const auto psi = pt.propagate(psi0, t);
    sum += mid_chain_entropy(psi, num_rungs);
  }
  return sum / static_cast<double>(times.size());
}

}  // namespace zeno
