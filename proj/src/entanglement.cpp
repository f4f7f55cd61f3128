#include "zeno/entanglement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "zeno/basis.hpp"

namespace zeno {

namespace {

Eigen::Map<const Eigen::MatrixXcd> amplitude_matrix(std::span<const cplx> state, int num_rungs, int cut) {
  check_num_rungs(num_rungs);
  if (cut < 1 || cut >= num_rungs) {
    throw std::out_of_range("cut must lie in [1, L), got " + std::to_string(cut) + " for L = " + std::to_string(num_rungs));
  }
  if (state.size() != hilbert_dimension(num_rungs)) throw std::invalid_argument("state length does not match 4^L");
  const auto dim_a = static_cast<Eigen::Index>(hilbert_dimension(cut));
  const auto dim_b = static_cast<Eigen::Index>(hilbert_dimension(num_rungs - cut));
  return Eigen::Map<const Eigen::MatrixXcd>(state.data(), dim_a, dim_b);
}

}  // namespace

ReducedDensityMatrix reduced_density_matrix(std::span<const cplx> state, int num_rungs, int cut) {
  const auto m = amplitude_matrix(state, num_rungs, cut);
  ReducedDensityMatrix rho;
  rho.cut = cut;
  rho.matrix = m * m.adjoint();
  return rho;
}

double entropy_of_spectrum(const Eigen::Ref<const Eigen::VectorXd>& probabilities) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (p > kEntropyClamp) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const ReducedDensityMatrix& rho) {
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-8) throw std::invalid_argument("reduced density matrix trace " + std::to_string(tr) + " != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix, Eigen::EigenvaluesOnly);
  return entropy_of_spectrum(es.eigenvalues());
}

double schmidt_entropy(std::span<const cplx> state, int num_rungs, int cut) {
  const auto m = amplitude_matrix(state, num_rungs, cut);
  const double tr = m.squaredNorm();
  if (std::abs(tr - 1.0) > 1e-8) throw std::invalid_argument("state norm squared " + std::to_string(tr) + " != 1");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd p = svd.singularValues().array().square();
  return entropy_of_spectrum(p);
}

double page_value(double dim_a, double dim_b) {
  if (!(dim_a >= 1.0) || !(dim_b >= 1.0)) throw std::invalid_argument("subsystem dimensions must be >= 1");
  if (dim_a > dim_b) throw std::invalid_argument("page_value expects dim_a <= dim_b");
  return std::log(dim_a) - dim_a / (2.0 * dim_b);
}

double mid_chain_entropy(std::span<const cplx> state, int num_rungs, int cut) {
  return von_neumann_entropy(reduced_density_matrix(state, num_rungs, cut > 0 ? cut : num_rungs / 2));
}

}  // namespace zeno
