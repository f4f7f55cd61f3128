// Compiled with -mavx2 -mfma; only reached through the dispatch table after
// a CPUID check.
#include <immintrin.h>

#include "zeno/kernels.hpp"

namespace zeno::kernels {
namespace {

// Two interleaved complex numbers per register: [re0, im0, re1, im1].

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);          // [ar0, ar0, ar1, ar1]
  const __m256d a_im = _mm256_permute_pd(a, 0b1111);  // [ai0, ai0, ai1, ai1]
  const __m256d b_sw = _mm256_permute_pd(b, 0b0101);  // [bi0, br0, bi1, br1]
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

inline __m256d broadcast(cplx a) { return _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag()); }

inline cplx hsum_pairs(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void csr_matvec(std::size_t rows, const int* row_ptr, const int* cols, const cplx* vals, const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    int k = row_ptr[r];
    const int end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 1 < end; k += 2) {
      const __m256d v = _mm256_loadu_pd(dp(vals + k));
      const __m256d xv = _mm256_set_m128d(_mm_loadu_pd(dp(x + cols[k + 1])), _mm_loadu_pd(dp(x + cols[k])));
      acc = _mm256_add_pd(acc, cmul(v, xv));
    }
    cplx s = hsum_pairs(acc);
    if (k < end) s += mul(vals[k], x[cols[k]]);
    y[r] = s;
  }
}

cplx dot(std::size_t n, const cplx* a, const cplx* b) {
  // conj(a) b = (ar br + ai bi) + i (ar bi - ai br)
  __m256d same = _mm256_setzero_pd();   // [ar br, ai bi, ...]
  __m256d cross = _mm256_setzero_pd();  // [ar bi, ai br, ...]
  std::size_t k = 0;
  for (; k + 1 < n; k += 2) {
    const __m256d av = _mm256_loadu_pd(dp(a + k));
    const __m256d bv = _mm256_loadu_pd(dp(b + k));
    same = _mm256_fmadd_pd(av, bv, same);
    cross = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), cross);
  }
  const cplx s = hsum_pairs(same);
  const cplx c = hsum_pairs(cross);
  double re = s.real() + s.imag();
  double im = c.real() - c.imag();
  for (; k < n; ++k) {
    re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
  }
  return {re, im};
}

void axpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d av = broadcast(alpha);
  std::size_t k = 0;
  for (; k + 1 < n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + k));
    const __m256d yv = _mm256_loadu_pd(dp(y + k));
    _mm256_storeu_pd(dp(y + k), _mm256_add_pd(yv, cmul(av, xv)));
  }
  for (; k < n; ++k) y[k] += mul(alpha, x[k]);
}

void scale(std::size_t n, cplx alpha, cplx* x) {
  const __m256d av = broadcast(alpha);
  std::size_t k = 0;
  for (; k + 1 < n; k += 2) _mm256_storeu_pd(dp(x + k), cmul(av, _mm256_loadu_pd(dp(x + k))));
  for (; k < n; ++k) x[k] = mul(alpha, x[k]);
}

double norm_squared(std::size_t n, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 1 < n; k += 2) {
    const __m256d v = _mm256_loadu_pd(dp(x + k));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  const cplx s = hsum_pairs(acc);
  double total = s.real() + s.imag();
  for (; k < n; ++k) total += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return total;
}

void rotate(std::size_t n, const cplx* phases, const cplx* in, cplx* out) {
  std::size_t k = 0;
  for (; k + 1 < n; k += 2) {
    _mm256_storeu_pd(dp(out + k), cmul(_mm256_loadu_pd(dp(phases + k)), _mm256_loadu_pd(dp(in + k))));
  }
  for (; k < n; ++k) out[k] = mul(phases[k], in[k]);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", csr_matvec, dot, axpy, scale, norm_squared, rotate};
  return table;
}

}  // namespace zeno::kernels
