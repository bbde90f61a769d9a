#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops used by the raster pipeline. Every kernel has a
// scalar reference implementation and may have SIMD variants; the active
// variant is picked once at startup from CPU features. SIMD variants must be
// bit-identical to the scalar reference (same operation order per element,
// no FMA contraction), which is what tests/test_kernels.cpp enforces.

namespace msaft::kern {

enum class SimdLevel { Scalar, Avx2 };

struct Ops {
  // out[i] = floor(w*a[i] + (1-w)*b[i] + 0.5), inputs u8, result clamped to u8.
  void (*blend_u8)(const uint8_t* a, const uint8_t* b, float w, uint8_t* out,
                   size_t n);

  // Min/max over v skipping entries equal to nodata. Returns count of valid
  // entries; mn/mx untouched when it returns 0.
  size_t (*minmax_skip)(const float* v, size_t n, float nodata, float* mn,
                        float* mx);

  // out[i] = floor(255*(v[i]-mn)*inv_range + 0.5), nodata entries -> 0.
  void (*normalize_u8)(const float* v, size_t n, float nodata, float mn,
                       float inv_range, uint8_t* out);

  // SLIC assignment update for one row segment [x0,x1) at row y.
  // d2 = (L-cL)^2 + (A-ca)^2 + (B-cb)^2 + spatial_w2*((x-cx)^2 + (y-cy)^2);
  // strictly-smaller d2 wins, so ties keep the earlier (lower) center id.
  void (*slic_row_update)(const float* L, const float* A, const float* B,
                          int x0, int x1, float y, float cL, float ca,
                          float cb, float cx, float cy, float spatial_w2,
                          int32_t center_id, float* best_d2, int32_t* best_id);
};

// Scalar reference table, always available.
const Ops& scalar_ops();

// Dispatched table: best variant supported by the running CPU, or scalar
// when MSAFT_NO_SIMD is set in the environment / force_scalar(true) called.
const Ops& ops();

SimdLevel active_level();
void force_scalar(bool on);

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();  // defined only on x86-64 builds
bool cpu_has_avx2();
#endif

}  // namespace msaft::kern
