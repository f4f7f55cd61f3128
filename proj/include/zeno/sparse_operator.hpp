#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "zeno/basis.hpp"

namespace zeno {

using cplx = std::complex<double>;
using CsrMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor, int>;

struct Triplet {
  Index row;
  Index col;
  cplx value;
};

/// Sparse operator on the ladder Hilbert space, stored row-major (CSR) with
/// sorted column indices and duplicates summed. Immutable once built.
class SparseOperator {
 public:
  SparseOperator() = default;
  explicit SparseOperator(CsrMatrix m);

  /// Builds from (row, col, value) entries; duplicates are summed and exact
  /// zeros dropped.
  static SparseOperator from_triplets(Index dim, const std::vector<Triplet>& entries);
  static SparseOperator diagonal(const std::vector<double>& values);
  static SparseOperator zero(Index dim);
  /// Permutation operator |perm(i)><i|.
  static SparseOperator permutation(const std::vector<Index>& perm);

  Index dim() const { return static_cast<Index>(matrix_.rows()); }
  std::size_t nnz() const { return static_cast<std::size_t>(matrix_.nonZeros()); }
  const CsrMatrix& csr() const { return matrix_; }

  cplx at(Index row, Index col) const;
  /// Visits every stored entry in row-major order.
  template <class F>
  void for_each(F&& f) const {
    for (int r = 0; r < matrix_.outerSize(); ++r) {
      for (CsrMatrix::InnerIterator it(matrix_, r); it; ++it) f(static_cast<Index>(r), static_cast<Index>(it.col()), it.value());
    }
  }

  /// y = A x through the active kernel table.
  void apply(std::span<const cplx> x, std::span<cplx> y) const;
  std::vector<cplx> apply(std::span<const cplx> x) const;

  /// max |A - A^dagger|
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-15) const { return hermiticity_error() <= tol; }
  bool is_real() const;
  bool is_diagonal() const;
  double max_abs() const;
  double trace_real() const;

  SparseOperator operator+(const SparseOperator& other) const;
  SparseOperator operator-(const SparseOperator& other) const;
  SparseOperator operator*(const SparseOperator& other) const;
  SparseOperator scaled(cplx factor) const;

  Eigen::MatrixXcd to_dense() const;

 private:
  CsrMatrix matrix_;
};

/// max |[A, B]| entry.
double commutator_norm(const SparseOperator& a, const SparseOperator& b);
/// max |A - B| entry.
double max_abs_difference(const SparseOperator& a, const SparseOperator& b);
/// True if A_{p(r), p(c)} = A_{r, c} for every entry, i.e. [A, P] = 0 for
/// the permutation P.
bool commutes_with_permutation(const SparseOperator& a, const std::vector<Index>& perm, double tol = 0.0);

}  // namespace zeno
