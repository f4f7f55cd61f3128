#include <doctest.h>

#include <random>
#include <vector>

#include "zeno/hamiltonian.hpp"
#include "zeno/kernels.hpp"

using namespace zeno;
using kernels::cplx;

namespace {

std::vector<cplx> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("scalar kernels on a tiny example") {
  const auto& k = kernels::scalar_kernels();
  const std::vector<cplx> a{{1, 2}, {3, -1}};
  const std::vector<cplx> b{{0, 1}, {2, 2}};
  // conj(1+2i)(i) + conj(3-i)(2+2i) = (2+i) + (4+8i)
  CHECK(k.dot(2, a.data(), b.data()) == cplx(6, 9));
  CHECK(k.norm_squared(2, a.data()) == doctest::Approx(15.0));
  std::vector<cplx> y = b;
  k.axpy(2, {0, 1}, a.data(), y.data());
  CHECK(y[0] == cplx(-2, 2));
  CHECK(y[1] == cplx(3, 5));
}

TEST_CASE("avx2 kernels match the scalar reference") {
  const auto* fast = kernels::avx2_kernels();
  if (!fast) {
    MESSAGE("AVX2 variant unavailable on this machine; nothing to compare");
    return;
  }
  const auto& ref = kernels::scalar_kernels();

  for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 64u, 1001u}) {
    CAPTURE(n);
    const auto a = random_vector(n, 1 + n);
    const auto b = random_vector(n, 100 + n);
    CHECK(std::abs(ref.dot(n, a.data(), b.data()) - fast->dot(n, a.data(), b.data())) <= 1e-12 * (1.0 + n));
    CHECK(ref.norm_squared(n, a.data()) == doctest::Approx(fast->norm_squared(n, a.data())).epsilon(1e-13));

    auto y1 = b, y2 = b;
    ref.axpy(n, {0.3, -1.7}, a.data(), y1.data());
    fast->axpy(n, {0.3, -1.7}, a.data(), y2.data());
    CHECK(max_diff(y1, y2) <= 1e-14);

    y1 = a;
    y2 = a;
    ref.scale(n, {-0.5, 2.0}, y1.data());
    fast->scale(n, {-0.5, 2.0}, y2.data());
    CHECK(max_diff(y1, y2) <= 1e-14);

    std::vector<cplx> phases(n), o1(n), o2(n);
    for (std::size_t i = 0; i < n; ++i) phases[i] = std::polar(1.0, 0.37 * static_cast<double>(i));
    ref.rotate(n, phases.data(), a.data(), o1.data());
    fast->rotate(n, phases.data(), a.data(), o2.data());
    CHECK(max_diff(o1, o2) <= 1e-14);
  }

  SUBCASE("csr matvec on the model Hamiltonian") {
    ModelParams p;
    p.lambda = 0.3;
    p.V = 5.0;
    p.c = {1, -1, 1, 1};
    const auto h = build_hamiltonian(4, PerturbationKind::Heisenberg, p);
    const auto& csr = h.csr();
    const auto x = random_vector(h.dim(), 7);
    std::vector<cplx> y1(h.dim()), y2(h.dim());
    ref.csr_matvec(h.dim(), csr.outerIndexPtr(), csr.innerIndexPtr(), csr.valuePtr(), x.data(), y1.data());
    fast->csr_matvec(h.dim(), csr.outerIndexPtr(), csr.innerIndexPtr(), csr.valuePtr(), x.data(), y2.data());
    CHECK(max_diff(y1, y2) <= 1e-12);
  }
}

TEST_CASE("kernel selection") {
  const auto names = kernels::available();
  REQUIRE(!names.empty());
  CHECK(names.front() == "scalar");
  CHECK(kernels::select("scalar"));
  CHECK(kernels::active().name == "scalar");
  CHECK_FALSE(kernels::select("sse9"));
  for (auto n : names) CHECK(kernels::select(n));
}
