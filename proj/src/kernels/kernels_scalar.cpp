#include "zeno/kernels.hpp"

namespace zeno::kernels {
namespace {

// Plain product; std::complex operator* goes through the Annex G NaN path.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void csr_matvec(std::size_t rows, const int* row_ptr, const int* cols, const cplx* vals, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    cplx acc{0.0, 0.0};
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += mul(vals[k], x[cols[k]]);
    y[r] = acc;
  }
}

cplx dot(std::size_t n, const cplx* a, const cplx* b) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t k = 0; k < n; ++k) y[k] += mul(alpha, x[k]);
}

void scale(std::size_t n, cplx alpha, cplx* x) {
  for (std::size_t k = 0; k < n; ++k) x[k] = mul(alpha, x[k]);
}

double norm_squared(std::size_t n, const cplx* x) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return s;
}

void rotate(std::size_t n, const cplx* phases, const cplx* in, cplx* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = mul(phases[k], in[k]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", csr_matvec, dot, axpy, scale, norm_squared, rotate};
  return table;
}

}  // namespace zeno::kernels
