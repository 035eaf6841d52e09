// AVX2 variants of the enumeration and synthesis kernels. This translation
// unit is compiled with -mavx2 on x86-64; callers go through the runtime
// dispatch in kernels.cpp, which falls back to the scalar versions when the
// CPU lacks AVX2.
#if defined(__x86_64__) || defined(_M_X64)

#include <algorithm>
#include <limits>

#include "spinlogic/kernels.hpp"

#ifdef __AVX2__
#include <immintrin.h>
#endif

namespace spinlogic::kernels::avx2 {

bool compiled_in() {
#ifdef __AVX2__
  return true;
#else
  return false;
#endif
}

#ifdef __AVX2__

namespace {

inline __m256i min_epi64(__m256i a, __m256i b) {
  __m256i a_gt = _mm256_cmpgt_epi64(a, b);
  return _mm256_blendv_epi8(a, b, a_gt);
}

inline std::int64_t hmin_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
}

inline std::int32_t hmin_epi32(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i m = _mm_min_epi32(lo, hi);
  m = _mm_min_epi32(m, _mm_shuffle_epi32(m, 0x4E));
  m = _mm_min_epi32(m, _mm_shuffle_epi32(m, 0xB1));
  return _mm_cvtsi128_si32(m);
}

inline std::int32_t hmax_epi32(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i m = _mm_max_epi32(lo, hi);
  m = _mm_max_epi32(m, _mm_shuffle_epi32(m, 0x4E));
  m = _mm_max_epi32(m, _mm_shuffle_epi32(m, 0xB1));
  return _mm_cvtsi128_si32(m);
}

}  // namespace

std::int64_t energy_block(const TermTable& table, std::uint64_t first, std::size_t count,
                          std::int64_t* out) {
  const std::size_t nterms = table.num_terms();
  const __m256i lane_offsets = _mm256_set_epi64x(3, 2, 1, 0);
  const __m256i ones = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  __m256i vmin = _mm256_set1_epi64x(std::numeric_limits<std::int64_t>::max());

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i mask =
        _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(first + i)), lane_offsets);
    __m256i acc = _mm256_set1_epi64x(table.base);
    for (std::size_t t = 0; t < nterms; ++t) {
      const __m256i xa = _mm256_srl_epi64(mask, _mm_cvtsi32_si128(table.shift_a[t]));
      const __m256i xb = _mm256_srl_epi64(mask, _mm_cvtsi32_si128(table.shift_b[t]));
      const __m256i x = _mm256_and_si256(_mm256_xor_si256(xa, xb), ones);
      // 0 -> +weight, 1 -> -weight via two's-complement negate-by-mask
      const __m256i neg = _mm256_sub_epi64(zero, x);
      const __m256i w = _mm256_set1_epi64x(table.weight[t]);
      acc = _mm256_add_epi64(acc, _mm256_sub_epi64(_mm256_xor_si256(w, neg), neg));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), acc);
    vmin = min_epi64(vmin, acc);
  }

  std::int64_t block_min = hmin_epi64(vmin);
  if (i < count) {
    const std::int64_t tail_min = scalar::energy_block(table, first + i, count - i, out + i);
    block_min = std::min(block_min, tail_min);
  }
  return block_min;
}

void add_scaled(const std::int32_t* p, const std::int32_t* sigma, std::int32_t v, int rows,
                std::int32_t* out) {
  const __m256i vv = _mm256_set1_epi32(v);
  for (int r = 0; r < rows; r += 8) {
    const __m256i pv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + r));
    const __m256i sv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sigma + r));
    const __m256i res = _mm256_add_epi32(pv, _mm256_mullo_epi32(sv, vv));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + r), res);
  }
}

RowStats row_stats(const std::int32_t* p, const RowLayout& layout) {
  const int comps = 1 << layout.anc_log2;
  const int rows = layout.num_groups * comps;
  const int padded = (rows + 7) & ~7;
  const __m256i int_max = _mm256_set1_epi32(std::numeric_limits<std::int32_t>::max());
  const __m256i int_min = _mm256_set1_epi32(std::numeric_limits<std::int32_t>::min());

  RowStats st;
  st.min_consistent = std::numeric_limits<std::int64_t>::max();
  st.max_consistent = std::numeric_limits<std::int64_t>::min();
  st.min_inconsistent = std::numeric_limits<std::int64_t>::max();

  if (comps <= 4) {
    // Group minima computed in-register; each group's min ends up replicated
    // across its completion lanes, which leaves masked reductions unchanged.
    __m256i acc_min_c = int_max, acc_max_c = int_min, acc_min_i = int_max;
    for (int r = 0; r < padded; r += 8) {
      __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + r));
      if (comps >= 2) v = _mm256_min_epi32(v, _mm256_shuffle_epi32(v, 0xB1));
      if (comps == 4) v = _mm256_min_epi32(v, _mm256_shuffle_epi32(v, 0x4E));
      const __m256i cmask = _mm256_loadu_si256(
          reinterpret_cast<const __m256i*>(layout.consistent_mask.data() + r));
      acc_min_c = _mm256_min_epi32(acc_min_c, _mm256_blendv_epi8(int_max, v, cmask));
      acc_max_c = _mm256_max_epi32(acc_max_c, _mm256_blendv_epi8(int_min, v, cmask));
      acc_min_i = _mm256_min_epi32(acc_min_i, _mm256_blendv_epi8(v, int_max, cmask));
    }
    const std::int32_t mn_c = hmin_epi32(acc_min_c);
    const std::int32_t mx_c = hmax_epi32(acc_max_c);
    const std::int32_t mn_i = hmin_epi32(acc_min_i);
    if (mn_c != std::numeric_limits<std::int32_t>::max()) {
      st.min_consistent = mn_c;
      st.max_consistent = mx_c;
    }
    if (mn_i != std::numeric_limits<std::int32_t>::max()) st.min_inconsistent = mn_i;
    return st;
  }

  // Wide groups (8+ completions) span whole vectors.
  for (int g = 0; g < layout.num_groups; ++g) {
    __m256i acc = int_max;
    for (int c = 0; c < comps; c += 8) {
      acc = _mm256_min_epi32(
          acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + g * comps + c)));
    }
    const std::int64_t mn = hmin_epi32(acc);
    if (layout.consistent_mask[static_cast<std::size_t>(g) * comps] != 0) {
      st.min_consistent = std::min(st.min_consistent, mn);
      st.max_consistent = std::max(st.max_consistent, mn);
    } else {
      st.min_inconsistent = std::min(st.min_inconsistent, mn);
    }
  }
  return st;
}

#else  // !__AVX2__: stubs keep the dispatch table linkable; never selected.

std::int64_t energy_block(const TermTable& table, std::uint64_t first, std::size_t count,
                          std::int64_t* out) {
  return scalar::energy_block(table, first, count, out);
}

void add_scaled(const std::int32_t* p, const std::int32_t* sigma, std::int32_t v, int rows,
                std::int32_t* out) {
  scalar::add_scaled(p, sigma, v, rows, out);
}

RowStats row_stats(const std::int32_t* p, const RowLayout& layout) {
  return scalar::row_stats(p, layout);
}

#endif

}  // namespace spinlogic::kernels::avx2

#endif  // x86-64
