#include "msaft/kernels.hpp"

#include <cmath>

// Scalar reference kernels. These define the numeric contract; SIMD variants
// replicate the exact per-element operation order.

namespace msaft::kern {
namespace {

void blend_u8_scalar(const uint8_t* a, const uint8_t* b, float w, uint8_t* out,
                     size_t n) {
  const float wa = w;
  const float wb = 1.0f - w;
  for (size_t i = 0; i < n; ++i) {
    float v = wa * static_cast<float>(a[i]) + wb * static_cast<float>(b[i]);
    v = std::floor(v + 0.5f);
    if (v < 0.0f) v = 0.0f;
    if (v > 255.0f) v = 255.0f;
    out[i] = static_cast<uint8_t>(v);
  }
}

size_t minmax_skip_scalar(const float* v, size_t n, float nodata, float* mn,
                          float* mx) {
  float lo = 0.0f, hi = 0.0f;
  size_t valid = 0;
  for (size_t i = 0; i < n; ++i) {
    const float x = v[i];
    if (x == nodata) continue;
    if (valid == 0) {
      lo = hi = x;
    } else {
      if (x < lo) lo = x;
      if (x > hi) hi = x;
    }
    ++valid;
  }
  if (valid) {
    *mn = lo;
    *mx = hi;
  }
  return valid;
}

void normalize_u8_scalar(const float* v, size_t n, float nodata, float mn,
                         float inv_range, uint8_t* out) {
  for (size_t i = 0; i < n; ++i) {
    const float x = v[i];
    if (x == nodata) {
      out[i] = 0;
      continue;
    }
    float t = (x - mn) * inv_range;
    t = std::floor(t * 255.0f + 0.5f);
    if (t < 0.0f) t = 0.0f;
    if (t > 255.0f) t = 255.0f;
    out[i] = static_cast<uint8_t>(t);
  }
}

void slic_row_update_scalar(const float* L, const float* A, const float* B,
                            int x0, int x1, float y, float cL, float ca,
                            float cb, float cx, float cy, float spatial_w2,
                            int32_t center_id, float* best_d2,
                            int32_t* best_id) {
  const float dy = y - cy;
  const float dy2 = dy * dy;
  for (int x = x0; x < x1; ++x) {
    const float dl = L[x] - cL;
    const float da = A[x] - ca;
    const float db = B[x] - cb;
    const float dx = static_cast<float>(x) - cx;
    const float d2 =
        dl * dl + da * da + db * db + spatial_w2 * (dx * dx + dy2);
    if (d2 < best_d2[x]) {
      best_d2[x] = d2;
      best_id[x] = center_id;
    }
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{blend_u8_scalar, minmax_skip_scalar,
                         normalize_u8_scalar, slic_row_update_scalar};
  return table;
}

}  // namespace msaft::kern
