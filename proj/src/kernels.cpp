#include "msaft/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace msaft::kern {
namespace {

std::atomic<bool> g_force_scalar{false};

bool env_disables_simd() {
  const char* e = std::getenv("MSAFT_NO_SIMD");
  return e != nullptr && e[0] != '\0' && e[0] != '0';
}

SimdLevel detect_level() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return SimdLevel::Avx2;
#endif
  return SimdLevel::Scalar;
}

}  // namespace

SimdLevel active_level() {
  static const SimdLevel hw = detect_level();
  if (g_force_scalar.load(std::memory_order_relaxed) || env_disables_simd())
    return SimdLevel::Scalar;
  return hw;
}

const Ops& ops() {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_level() == SimdLevel::Avx2) return avx2_ops();
#endif
  return scalar_ops();
}

void force_scalar(bool on) {
  g_force_scalar.store(on, std::memory_order_relaxed);
}

}  // namespace msaft::kern
