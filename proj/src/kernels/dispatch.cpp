#include <atomic>
#include <cstdlib>
#include <string>

#include "zeno/kernels.hpp"

namespace zeno::kernels {

#if defined(ZENO_HAVE_AVX2)
const KernelTable& avx2_kernel_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(ZENO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const KernelTable* initial_choice() {
  if (const char* env = std::getenv("ZENO_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_kernels();
    if (want == "avx2" && avx2_kernels() != nullptr) return avx2_kernels();
  }
  if (const auto* simd = avx2_kernels()) return simd;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_choice()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  if (name == "scalar") {
    current().store(&scalar_kernels(), std::memory_order_release);
    return true;
  }
  if (name == "avx2" && avx2_kernels() != nullptr) {
    current().store(avx2_kernels(), std::memory_order_release);
    return true;
  }
  return false;
}

std::vector<std::string_view> available() {
  std::vector<std::string_view> out{"scalar"};
  if (avx2_kernels() != nullptr) out.push_back("avx2");
  return out;
}

}  // namespace zeno::kernels
