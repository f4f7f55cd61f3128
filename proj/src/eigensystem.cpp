#include "zeno/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Eigenvalues>

#include "zeno/errors.hpp"
#include "zeno/kernels.hpp"

namespace zeno {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559L;

template <class Matrix>
void solve_in_place(Matrix& a, Eigen::VectorXd& values) {
  if (a.rows() == 0) {
    values.resize(0);
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  values = es.eigenvalues();
  a = es.eigenvectors();
}

template <class Matrix>
void solve_extended(Matrix& a, Eigen::VectorXd& values, std::vector<long double>& precise) {
  using Scalar = typename Matrix::Scalar;
  using Wide = std::conditional_t<Eigen::NumTraits<Scalar>::IsComplex, std::complex<long double>, long double>;
  using WideMatrix = Eigen::Matrix<Wide, Eigen::Dynamic, Eigen::Dynamic>;
  precise.clear();
  if (a.rows() == 0) {
    values.resize(0);
    return;
  }
  Eigen::SelfAdjointEigenSolver<WideMatrix> es(a.template cast<Wide>(), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  precise.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  values = es.eigenvalues().template cast<double>();
  a = es.eigenvectors().template cast<Scalar>();
}

}  // namespace

void hermitian_eigen(Eigen::MatrixXd& a, Eigen::VectorXd& values) { solve_in_place(a, values); }

void hermitian_eigen(Eigen::MatrixXcd& a, Eigen::VectorXd& values) { solve_in_place(a, values); }

void hermitian_eigen(Eigen::MatrixXd& a, Eigen::VectorXd& values, std::vector<long double>& precise) {
  solve_extended(a, values, precise);
}

void hermitian_eigen(Eigen::MatrixXcd& a, Eigen::VectorXd& values, std::vector<long double>& precise) {
  solve_extended(a, values, precise);
}

DenseEigensystem::DenseEigensystem(const SparseOperator& h, int num_rungs)
    : DenseEigensystem(h, BlockStructure::for_operator(h, num_rungs)) {}

DenseEigensystem::DenseEigensystem(const SparseOperator& h, BlockStructure blocks) : blocks_(std::move(blocks)) {
  if (h.dim() != blocks_.dim()) throw std::invalid_argument("block structure does not match operator dimension");
  const double herm = h.hermiticity_error();
  if (herm > 1e-12 * std::max(1.0, h.max_abs())) {
    throw std::invalid_argument("operator is not Hermitian (max |A - A^dag| = " + std::to_string(herm) + ")");
  }
  spectra_.resize(blocks_.blocks().size());
  for (std::size_t b = 0; b < spectra_.size(); ++b) {
    Eigen::MatrixXcd m = blocks_.block_matrix(b, h);
    auto& s = spectra_[b];
    s.real = m.imag().cwiseAbs().maxCoeff() == 0.0;
    if (s.real) {
      s.real_vectors = m.real();
      hermitian_eigen(s.real_vectors, s.values, s.precise_values);
    } else {
      s.complex_vectors = std::move(m);
      hermitian_eigen(s.complex_vectors, s.values, s.precise_values);
    }
    for (Eigen::Index k = 0; k < s.values.size(); ++k) order_.push_back({b, k});
  }
  std::stable_sort(order_.begin(), order_.end(), [this](const Slot& x, const Slot& y) {
    return spectra_[x.block].values[x.local] < spectra_[y.block].values[y.local];
  });
  sorted_values_.reserve(order_.size());
  for (const auto& slot : order_) sorted_values_.push_back(spectra_[slot.block].values[slot.local]);
}

std::vector<cplx> DenseEigensystem::eigenvector(std::size_t k) const {
  const auto& slot = order_.at(k);
  const auto& s = spectra_[slot.block];
  std::vector<cplx> out(dim(), cplx{0.0, 0.0});
  if (s.real) {
    blocks_.embed_add(slot.block, s.real_vectors.col(slot.local).cast<cplx>(), out);
  } else {
    blocks_.embed_add(slot.block, s.complex_vectors.col(slot.local), out);
  }
  return out;
}

Eigen::VectorXcd DenseEigensystem::to_eigenbasis(std::span<const cplx> psi) const {
  if (psi.size() != dim()) throw std::invalid_argument("state length does not match operator");
  std::vector<Eigen::VectorXcd> local(spectra_.size());
  for (std::size_t b = 0; b < spectra_.size(); ++b) {
    const Eigen::VectorXcd coords = blocks_.project(b, psi);
    const auto& s = spectra_[b];
    local[b] = s.real ? Eigen::VectorXcd(s.real_vectors.transpose() * coords) : Eigen::VectorXcd(s.complex_vectors.adjoint() * coords);
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(order_.size()));
  for (std::size_t k = 0; k < order_.size(); ++k) out[static_cast<Eigen::Index>(k)] = local[order_[k].block][order_[k].local];
  return out;
}

void DenseEigensystem::propagate(std::span<const cplx> psi0, std::span<const double> times,
                                 const std::function<void(std::size_t, double, std::span<const cplx>)>& sink) const {
  if (psi0.size() != dim()) throw std::invalid_argument("state length does not match operator");
  constexpr std::size_t kBatch = 32;
  const auto& kern = kernels::active();

  std::vector<Eigen::VectorXcd> amplitudes(spectra_.size());
  for (std::size_t b = 0; b < spectra_.size(); ++b) {
    const Eigen::VectorXcd coords = blocks_.project(b, psi0);
    const auto& s = spectra_[b];
    amplitudes[b] = s.real ? Eigen::VectorXcd(s.real_vectors.transpose() * coords) : Eigen::VectorXcd(s.complex_vectors.adjoint() * coords);
  }

  std::vector<std::vector<cplx>> states(kBatch, std::vector<cplx>(dim()));
  std::vector<cplx> phases;
  for (std::size_t start = 0; start < times.size(); start += kBatch) {
    const std::size_t count = std::min(kBatch, times.size() - start);
    for (std::size_t k = 0; k < count; ++k) std::fill(states[k].begin(), states[k].end(), cplx{0.0, 0.0});

    for (std::size_t b = 0; b < spectra_.size(); ++b) {
      const auto& s = spectra_[b];
      const Eigen::Index n = s.values.size();
      if (n == 0) continue;
      phases.resize(static_cast<std::size_t>(n));
      Eigen::MatrixXcd rotated(n, static_cast<Eigen::Index>(count));
      for (std::size_t k = 0; k < count; ++k) {
        const long double t = times[start + k];
        for (Eigen::Index j = 0; j < n; ++j) {
          const double arg = static_cast<double>(std::fmod(-s.precise_values[j] * t, kTwoPi));
          phases[j] = {std::cos(arg), std::sin(arg)};
        }
        kern.rotate(static_cast<std::size_t>(n), phases.data(), amplitudes[b].data(), rotated.col(static_cast<Eigen::Index>(k)).data());
      }
      Eigen::MatrixXcd coords;
      if (s.real) {
        // Real eigenvectors: one real GEMM on the stacked real and imaginary parts.
        Eigen::MatrixXd stacked(n, 2 * static_cast<Eigen::Index>(count));
        stacked << rotated.real(), rotated.imag();
        const Eigen::MatrixXd prod = s.real_vectors * stacked;
        coords.resize(n, static_cast<Eigen::Index>(count));
        coords.real() = prod.leftCols(static_cast<Eigen::Index>(count));
        coords.imag() = prod.rightCols(static_cast<Eigen::Index>(count));
      } else {
        coords = s.complex_vectors * rotated;
      }
      for (std::size_t k = 0; k < count; ++k) blocks_.embed_add(b, coords.col(static_cast<Eigen::Index>(k)), states[k]);
    }
    for (std::size_t k = 0; k < count; ++k) sink(start + k, times[start + k], states[k]);
  }
}

}  // namespace zeno
