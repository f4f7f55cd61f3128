#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

// Data-parallel inner loops of the sparse/Krylov path. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2+FMA variant. The
// variant is chosen once at startup from CPUID; the environment variable
// ZENO_KERNELS=scalar|avx2 overrides the choice.

namespace zeno::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  std::string_view name;

  /// y = A x for a CSR matrix with complex values.
  void (*csr_matvec)(std::size_t rows, const int* row_ptr, const int* cols, const cplx* vals, const cplx* x,
                     cplx* y);
  /// sum_k conj(a_k) b_k
  cplx (*dot)(std::size_t n, const cplx* a, const cplx* b);
  /// y += alpha x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// x *= alpha
  void (*scale)(std::size_t n, cplx alpha, cplx* x);
  /// sum_k |x_k|^2
  double (*norm_squared)(std::size_t n, const cplx* x);
  /// out_k = in_k * exp(-i energies_k t), phases precomputed as (cos, sin) pairs.
  void (*rotate)(std::size_t n, const cplx* phases, const cplx* in, cplx* out);
};

const KernelTable& scalar_kernels();
/// nullptr when the AVX2 variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

/// The table in use. Thread-safe after first call.
const KernelTable& active();
/// Forces a variant by name ("scalar" or "avx2"); returns false if unavailable.
bool select(std::string_view name);
/// Names of every variant usable on this machine.
std::vector<std::string_view> available();

}  // namespace zeno::kernels
