#include "zeno/sparse_operator.hpp"

#include <algorithm>
#include <stdexcept>

#include "zeno/kernels.hpp"

namespace zeno {

namespace {

void check_same_dim(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("operator dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

double max_abs_entry(const CsrMatrix& m) {
  double out = 0.0;
  for (int r = 0; r < m.outerSize(); ++r) {
    for (CsrMatrix::InnerIterator it(m, r); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

}  // namespace

SparseOperator::SparseOperator(CsrMatrix m) : matrix_(std::move(m)) {
  if (matrix_.rows() != matrix_.cols()) throw std::invalid_argument("operator must be square");
  matrix_.prune(cplx{0.0, 0.0}, 0.0);
  matrix_.makeCompressed();
}

SparseOperator SparseOperator::from_triplets(Index dim, const std::vector<Triplet>& entries) {
  std::vector<Eigen::Triplet<cplx, int>> t;
  t.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) throw std::out_of_range("triplet index outside operator dimension");
    t.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
  }
  CsrMatrix m(static_cast<int>(dim), static_cast<int>(dim));
  m.setFromTriplets(t.begin(), t.end());
  return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::diagonal(const std::vector<double>& values) {
  std::vector<Triplet> t;
  t.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) t.push_back({i, i, values[i]});
  return from_triplets(values.size(), t);
}

SparseOperator SparseOperator::zero(Index dim) {
  CsrMatrix m(static_cast<int>(dim), static_cast<int>(dim));
  return SparseOperator(std::move(m));
}

SparseOperator SparseOperator::permutation(const std::vector<Index>& perm) {
  std::vector<Triplet> t;
  t.reserve(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) t.push_back({perm[i], i, 1.0});
  return from_triplets(perm.size(), t);
}

cplx SparseOperator::at(Index row, Index col) const {
  if (row >= dim() || col >= dim()) throw std::out_of_range("operator entry out of range");
  return matrix_.coeff(static_cast<int>(row), static_cast<int>(col));
}

void SparseOperator::apply(std::span<const cplx> x, std::span<cplx> y) const {
  if (x.size() != dim() || y.size() != dim()) throw std::invalid_argument("vector length does not match operator");
  kernels::active().csr_matvec(dim(), matrix_.outerIndexPtr(), matrix_.innerIndexPtr(), matrix_.valuePtr(),
                               x.data(), y.data());
}

std::vector<cplx> SparseOperator::apply(std::span<const cplx> x) const {
  std::vector<cplx> y(dim());
  apply(x, y);
  return y;
}

double SparseOperator::hermiticity_error() const {
  const CsrMatrix adj = matrix_.adjoint();
  const CsrMatrix diff = matrix_ - adj;
  return max_abs_entry(diff);
}

bool SparseOperator::is_real() const {
  const auto* v = matrix_.valuePtr();
  return std::all_of(v, v + matrix_.nonZeros(), [](cplx z) { return z.imag() == 0.0; });
}

bool SparseOperator::is_diagonal() const {
  bool diag = true;
  for_each([&](Index r, Index c, cplx) { diag = diag && r == c; });
  return diag;
}

double SparseOperator::max_abs() const { return max_abs_entry(matrix_); }

double SparseOperator::trace_real() const {
  double t = 0.0;
  for (Index i = 0; i < dim(); ++i) t += matrix_.coeff(static_cast<int>(i), static_cast<int>(i)).real();
  return t;
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
  check_same_dim(*this, other);
  return SparseOperator(CsrMatrix(matrix_ + other.matrix_));
}

SparseOperator SparseOperator::operator-(const SparseOperator& other) const {
  check_same_dim(*this, other);
  return SparseOperator(CsrMatrix(matrix_ - other.matrix_));
}

SparseOperator SparseOperator::operator*(const SparseOperator& other) const {
  check_same_dim(*this, other);
  return SparseOperator(CsrMatrix(matrix_ * other.matrix_));
}

SparseOperator SparseOperator::scaled(cplx factor) const { return SparseOperator(CsrMatrix(matrix_ * factor)); }

Eigen::MatrixXcd SparseOperator::to_dense() const { return Eigen::MatrixXcd(matrix_); }

double commutator_norm(const SparseOperator& a, const SparseOperator& b) {
  check_same_dim(a, b);
  const CsrMatrix c = a.csr() * b.csr() - b.csr() * a.csr();
  return max_abs_entry(c);
}

double max_abs_difference(const SparseOperator& a, const SparseOperator& b) {
  check_same_dim(a, b);
  return max_abs_entry(CsrMatrix(a.csr() - b.csr()));
}

bool commutes_with_permutation(const SparseOperator& a, const std::vector<Index>& perm, double tol) {
  if (perm.size() != a.dim()) throw std::invalid_argument("permutation length does not match operator");
  bool ok = true;
  a.for_each([&](Index r, Index c, cplx v) {
    if (ok && std::abs(a.at(perm[r], perm[c]) - v) > tol) ok = false;
  });
  return ok;
}

}  // namespace zeno
