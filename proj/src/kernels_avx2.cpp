#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "msaft/kernels.hpp"

// AVX2 variants. Compiled with -mavx2 (no -mfma): each element goes through
// the same IEEE mul/add/floor sequence as the scalar reference, so results
// are bit-identical and the equivalence tests can require exact equality.

namespace msaft::kern {
namespace {

void blend_u8_avx2(const uint8_t* a, const uint8_t* b, float w, uint8_t* out,
                   size_t n) {
  const __m256 wa = _mm256_set1_ps(w);
  const __m256 wb = _mm256_set1_ps(1.0f - w);
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256 zero = _mm256_setzero_ps();
  const __m256 vmax = _mm256_set1_ps(255.0f);
  size_t i = 0;
  alignas(32) int32_t tmp[8];
  for (; i + 8 <= n; i += 8) {
    const __m256 fa = _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(
        _mm_loadl_epi64(reinterpret_cast<const __m128i*>(a + i))));
    const __m256 fb = _mm256_cvtepi32_ps(_mm256_cvtepu8_epi32(
        _mm_loadl_epi64(reinterpret_cast<const __m128i*>(b + i))));
    __m256 v = _mm256_add_ps(_mm256_mul_ps(wa, fa), _mm256_mul_ps(wb, fb));
    v = _mm256_floor_ps(_mm256_add_ps(v, half));
    v = _mm256_min_ps(_mm256_max_ps(v, zero), vmax);
    _mm256_store_si256(reinterpret_cast<__m256i*>(tmp),
                       _mm256_cvttps_epi32(v));
    for (int k = 0; k < 8; ++k) out[i + k] = static_cast<uint8_t>(tmp[k]);
  }
  for (; i < n; ++i) {
    float v = w * static_cast<float>(a[i]) +
              (1.0f - w) * static_cast<float>(b[i]);
    v = std::floor(v + 0.5f);
    if (v < 0.0f) v = 0.0f;
    if (v > 255.0f) v = 255.0f;
    out[i] = static_cast<uint8_t>(v);
  }
}

size_t minmax_skip_avx2(const float* v, size_t n, float nodata, float* mn,
                        float* mx) {
  const float inf = std::numeric_limits<float>::infinity();
  __m256 vmin = _mm256_set1_ps(inf);
  __m256 vmax = _mm256_set1_ps(-inf);
  const __m256 vnod = _mm256_set1_ps(nodata);
  size_t valid = 0;
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 x = _mm256_loadu_ps(v + i);
    const __m256 keep = _mm256_cmp_ps(x, vnod, _CMP_NEQ_OQ);
    valid += static_cast<size_t>(
        __builtin_popcount(_mm256_movemask_ps(keep)));
    vmin = _mm256_min_ps(vmin, _mm256_blendv_ps(_mm256_set1_ps(inf), x, keep));
    vmax =
        _mm256_max_ps(vmax, _mm256_blendv_ps(_mm256_set1_ps(-inf), x, keep));
  }
  alignas(32) float lo8[8], hi8[8];
  _mm256_store_ps(lo8, vmin);
  _mm256_store_ps(hi8, vmax);
  float lo = inf, hi = -inf;
  for (int k = 0; k < 8; ++k) {
    if (lo8[k] < lo) lo = lo8[k];
    if (hi8[k] > hi) hi = hi8[k];
  }
  for (; i < n; ++i) {
    const float x = v[i];
    if (x == nodata) continue;
    if (x < lo) lo = x;
    if (x > hi) hi = x;
    ++valid;
  }
  if (valid) {
    *mn = lo;
    *mx = hi;
  }
  return valid;
}

void normalize_u8_avx2(const float* v, size_t n, float nodata, float mn,
                       float inv_range, uint8_t* out) {
  const __m256 vmn = _mm256_set1_ps(mn);
  const __m256 vinv = _mm256_set1_ps(inv_range);
  const __m256 v255 = _mm256_set1_ps(255.0f);
  const __m256 half = _mm256_set1_ps(0.5f);
  const __m256 zero = _mm256_setzero_ps();
  const __m256 vnod = _mm256_set1_ps(nodata);
  size_t i = 0;
  alignas(32) int32_t tmp[8];
  for (; i + 8 <= n; i += 8) {
    const __m256 x = _mm256_loadu_ps(v + i);
    __m256 t = _mm256_mul_ps(_mm256_sub_ps(x, vmn), vinv);
    t = _mm256_floor_ps(_mm256_add_ps(_mm256_mul_ps(t, v255), half));
    t = _mm256_min_ps(_mm256_max_ps(t, zero), v255);
    const __m256 isnod = _mm256_cmp_ps(x, vnod, _CMP_EQ_OQ);
    t = _mm256_blendv_ps(t, zero, isnod);
    _mm256_store_si256(reinterpret_cast<__m256i*>(tmp),
                       _mm256_cvttps_epi32(t));
    for (int k = 0; k < 8; ++k) out[i + k] = static_cast<uint8_t>(tmp[k]);
  }
  for (; i < n; ++i) {
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

void slic_row_update_avx2(const float* L, const float* A, const float* B,
                          int x0, int x1, float y, float cL, float ca,
                          float cb, float cx, float cy, float spatial_w2,
                          int32_t center_id, float* best_d2,
                          int32_t* best_id) {
  const float dy = y - cy;
  const float dy2f = dy * dy;
  const __m256 vl = _mm256_set1_ps(cL);
  const __m256 va = _mm256_set1_ps(ca);
  const __m256 vb = _mm256_set1_ps(cb);
  const __m256 vcx = _mm256_set1_ps(cx);
  const __m256 vsw = _mm256_set1_ps(spatial_w2);
  const __m256 vdy2 = _mm256_set1_ps(dy2f);
  const __m256 iota = _mm256_setr_ps(0, 1, 2, 3, 4, 5, 6, 7);
  const __m256i vid = _mm256_set1_epi32(center_id);
  int x = x0;
  for (; x + 8 <= x1; x += 8) {
    const __m256 dl = _mm256_sub_ps(_mm256_loadu_ps(L + x), vl);
    const __m256 da = _mm256_sub_ps(_mm256_loadu_ps(A + x), va);
    const __m256 db = _mm256_sub_ps(_mm256_loadu_ps(B + x), vb);
    const __m256 xf =
        _mm256_add_ps(_mm256_set1_ps(static_cast<float>(x)), iota);
    const __m256 dx = _mm256_sub_ps(xf, vcx);
    // same association as the scalar kernel: ((dl^2+da^2)+db^2) + sw*((dx^2)+dy2)
    __m256 d2 = _mm256_add_ps(
        _mm256_add_ps(_mm256_add_ps(_mm256_mul_ps(dl, dl),
                                    _mm256_mul_ps(da, da)),
                      _mm256_mul_ps(db, db)),
        _mm256_mul_ps(vsw, _mm256_add_ps(_mm256_mul_ps(dx, dx), vdy2)));
    const __m256 old = _mm256_loadu_ps(best_d2 + x);
    const __m256 lt = _mm256_cmp_ps(d2, old, _CMP_LT_OQ);
    _mm256_storeu_ps(best_d2 + x, _mm256_blendv_ps(old, d2, lt));
    const __m256i oldid = _mm256_loadu_si256(
        reinterpret_cast<const __m256i*>(best_id + x));
    const __m256i newid = _mm256_blendv_epi8(oldid, vid,
                                             _mm256_castps_si256(lt));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(best_id + x), newid);
  }
  for (; x < x1; ++x) {
    const float dl = L[x] - cL;
    const float da = A[x] - ca;
    const float db = B[x] - cb;
    const float dx = static_cast<float>(x) - cx;
    const float d2 =
        dl * dl + da * da + db * db + spatial_w2 * (dx * dx + dy2f);
    if (d2 < best_d2[x]) {
      best_d2[x] = d2;
      best_id[x] = center_id;
    }
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{blend_u8_avx2, minmax_skip_avx2, normalize_u8_avx2,
                         slic_row_update_avx2};
  return table;
}

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

}  // namespace msaft::kern

#endif  // x86-64
