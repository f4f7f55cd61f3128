#include "zeno/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "zeno/errors.hpp"
#include "zeno/kernels.hpp"

namespace zeno {

namespace {

/// Lanczos basis of one step and the exact exponential of its projection.
/// The basis vectors are the leading columns of the caller's workspace.
struct KrylovBasis {
  Eigen::VectorXd ritz_values;
  Eigen::MatrixXd ritz_vectors;
  double norm0 = 0.0;
  double residual = 0.0;  // beta_m; zero on invariant subspace
  bool exhausted = false;

  Eigen::Index size() const { return ritz_values.size(); }

  /// Coordinates of exp(-i T tau) e_1 * norm0.
  Eigen::VectorXcd coords(double tau) const {
    const Eigen::Index m = size();
    Eigen::VectorXcd w(m);
    for (Eigen::Index k = 0; k < m; ++k) w[k] = std::polar(ritz_vectors(0, k), -ritz_values[k] * tau);
    return norm0 * (ritz_vectors.cast<cplx>() * w);
  }

  double error(double tau) const {
    if (exhausted) return 0.0;
    return residual * std::abs(coords(tau)[size() - 1]);
  }
};

}  // namespace

KrylovPropagator::KrylovPropagator(const SparseOperator& h, KrylovOptions options) : h_(h), options_(options) {
  if (options_.max_dimension < 2) throw std::invalid_argument("Krylov dimension must be at least 2");
  if (!(options_.tolerance > 0.0)) throw std::invalid_argument("Krylov tolerance must be positive");
  const double herm = h.hermiticity_error();
  scale_ = std::max(1.0, h.max_abs());
  if (herm > 1e-12 * scale_) {
    throw std::invalid_argument("operator is not Hermitian (max |A - A^dag| = " + std::to_string(herm) + ")");
  }
}

void KrylovPropagator::propagate(std::span<const cplx> psi0, std::span<const double> times, const StateSink& sink) {
  const std::size_t n = h_.dim();
  if (psi0.size() != n) throw std::invalid_argument("state length does not match operator");
  const auto& kern = kernels::active();
  const int m_max = static_cast<int>(std::min<std::size_t>(options_.max_dimension, n));

  std::vector<cplx> v(psi0.begin(), psi0.end());
  Eigen::VectorXcd w(static_cast<Eigen::Index>(n));
  std::vector<cplx> out(n);
  // Column j holds Lanczos vector j; Gram-Schmidt runs as two GEMVs per pass.
  Eigen::MatrixXcd basis(static_cast<Eigen::Index>(n), m_max);
  double t_now = 0.0;
  double hint = 1.0 / scale_;
  std::size_t next = 0;

  auto build = [&]() {
    KrylovBasis b;
    b.norm0 = std::sqrt(kern.norm_squared(n, v.data()));
    basis.col(0) = Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(n)) / b.norm0;
    std::vector<double> alpha, beta;
    for (int j = 0; j < m_max; ++j) {
      h_.apply(std::span<const cplx>(basis.col(j).data(), n), std::span<cplx>(w.data(), n));
      ++matvecs_;
      // Three-term recurrence, then one classical Gram-Schmidt pass against
      // the whole basis to remove the rounding-level remainder.
      if (j > 0) w -= beta.back() * basis.col(j - 1);
      const double a = basis.col(j).dot(w).real();
      w -= a * basis.col(j);
      const auto q = basis.leftCols(j + 1);
      const Eigen::VectorXcd c = q.adjoint() * w;
      w.noalias() -= q * c;
      alpha.push_back(a + c[j].real());
      const double bnorm = w.norm();
      if (bnorm <= 1e-13 * scale_) {
        b.exhausted = true;
        break;
      }
      beta.push_back(bnorm);
      if (j + 1 == m_max) break;
      basis.col(j + 1) = w / bnorm;
    }
    const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) {
      T(k, k) = alpha[k];
      if (k + 1 < m) T(k, k + 1) = T(k + 1, k) = beta[k];
    }
    if (!b.exhausted) {
      b.residual = beta.back();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    b.ritz_values = es.eigenvalues();
    b.ritz_vectors = es.eigenvectors();
    return b;
  };

  auto assemble = [&](const KrylovBasis& b, double tau, std::vector<cplx>& dst) {
    Eigen::Map<Eigen::VectorXcd>(dst.data(), static_cast<Eigen::Index>(n)).noalias() =
        basis.leftCols(b.size()) * b.coords(tau);
  };

  while (next < times.size()) {
    if (times[next] < t_now) throw std::invalid_argument("time grid must be ascending and non-negative");
    if (times[next] == t_now) {
      sink(next, times[next], v);
      ++next;
      continue;
    }
    const KrylovBasis b = build();
    ++steps_;
    const double remaining = times.back() - t_now;

    // Largest acceptable step: grow by doubling, shrink by halving.
    double tau = std::min(hint, remaining);
    if (b.error(tau) <= options_.tolerance) {
      while (tau < remaining && b.error(std::min(2 * tau, remaining)) <= options_.tolerance) tau = std::min(2 * tau, remaining);
    } else {
      while (b.error(tau) > options_.tolerance) {
        tau *= 0.5;
        if (tau * scale_ < options_.min_scaled_step || t_now + tau == t_now) {
          std::ostringstream msg;
          msg << "Krylov propagation failed to converge at t = " << t_now << " (tolerance " << options_.tolerance
              << ", subspace dimension " << b.size() << ")";
          throw NumericalError(msg.str());
        }
      }
    }
    // The accepted tau is within a factor 2 of the limit; bisect the gap.
    if (tau < remaining) {
      double hi = std::min(2 * tau, remaining);
      for (int it = 0; it < 8; ++it) {
        const double mid = 0.5 * (tau + hi);
        (b.error(mid) <= options_.tolerance ? tau : hi) = mid;
      }
    }
    hint = tau;

    while (next < times.size() && times[next] - t_now <= tau) {
      assemble(b, times[next] - t_now, out);
      sink(next, times[next], out);
      ++next;
    }
    assemble(b, tau, v);
    t_now += tau;
  }
}

}  // namespace zeno
