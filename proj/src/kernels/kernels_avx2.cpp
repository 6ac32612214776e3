// AVX2 + FMA variants of the batch kernels.  Compiled only on x86-64 and with
// -mavx2 -mfma for this translation unit; callers go through the dispatch
// table.  Lane math mirrors kernel_math.hpp operation for operation, so
// results are bit-identical to the scalar reference.

#include "ordexp/kernels.hpp"
#include "ordexp/philox.hpp"
#include "kernel_math.hpp"

#include <immintrin.h>

namespace ordexp::kernels {

namespace {

struct Avx2Backend {
  using F = __m256d;
  using U = __m256i;
  using M = __m256d;

  static F fc(double v) { return _mm256_set1_pd(v); }
  static U uc(std::uint64_t v) { return _mm256_set1_epi64x((long long)v); }
  static F add(F a, F b) { return _mm256_add_pd(a, b); }
  static F sub(F a, F b) { return _mm256_sub_pd(a, b); }
  static F mul(F a, F b) { return _mm256_mul_pd(a, b); }
  static F div(F a, F b) { return _mm256_div_pd(a, b); }
  static F fma(F a, F b, F c) { return _mm256_fmadd_pd(a, b, c); }
  static F rint(F a) {
    return _mm256_round_pd(a, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  }
  static U asu(F a) { return _mm256_castpd_si256(a); }
  static F asf(U a) { return _mm256_castsi256_pd(a); }
  static U shr(U a, int n) { return _mm256_srl_epi64(a, _mm_cvtsi32_si128(n)); }
  static U shl(U a, int n) { return _mm256_sll_epi64(a, _mm_cvtsi32_si128(n)); }
  static U uand(U a, U b) { return _mm256_and_si256(a, b); }
  static U uor(U a, U b) { return _mm256_or_si256(a, b); }
  static M lt(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
  static M le(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
  static M gt(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
  static M ge(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_GE_OQ); }
  static M unord(F a, F b) { return _mm256_cmp_pd(a, b, _CMP_UNORD_Q); }
  static F sel(M m, F a, F b) { return _mm256_blendv_pd(b, a, m); }
};

// ---- Philox4x32-10 over eight streams, state-of-arrays in 32-bit lanes ----

struct Philox8 {
  __m256i c0, c1, c2, c3, k0, k1;

  static void mulhilo(__m256i c, __m256i mul64, __m256i& lo, __m256i& hi) {
    const __m256i pe = _mm256_mul_epu32(c, mul64);
    const __m256i po = _mm256_mul_epu32(_mm256_srli_epi64(c, 32), mul64);
    lo = _mm256_blend_epi32(pe, _mm256_slli_epi64(po, 32), 0xAA);
    hi = _mm256_blend_epi32(_mm256_srli_epi64(pe, 32), po, 0xAA);
  }

  void rounds10() {
    const __m256i m0 = _mm256_set1_epi64x((long long)Philox4x32::kMul0);
    const __m256i m1 = _mm256_set1_epi64x((long long)Philox4x32::kMul1);
    const __m256i w0 = _mm256_set1_epi32((int)Philox4x32::kWey0);
    const __m256i w1 = _mm256_set1_epi32((int)Philox4x32::kWey1);
    for (int r = 0; r < 10; ++r) {
      __m256i lo0, hi0, lo1, hi1;
      mulhilo(c0, m0, lo0, hi0);
      mulhilo(c2, m1, lo1, hi1);
      c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), k0);
      c1 = lo1;
      c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), k1);
      c3 = lo0;
      k0 = _mm256_add_epi32(k0, w0);
      k1 = _mm256_add_epi32(k1, w1);
    }
  }
};

// ((r >> 12) + 0.5) * 2^-52, same two roundings as bits_to_unit_double.
inline __m256d bits_to_unit_4(__m256i r64) {
  const __m256i shifted = _mm256_srli_epi64(r64, 12);
  const __m256d d = _mm256_sub_pd(
      _mm256_castsi256_pd(
          _mm256_or_si256(shifted, _mm256_set1_epi64x(0x4330000000000000ll))),
      _mm256_set1_pd(0x1p52));
  return _mm256_mul_pd(_mm256_add_pd(d, _mm256_set1_pd(0.5)),
                       _mm256_set1_pd(0x1p-52));
}

void uniform_pair_columns_avx2(std::uint64_t seed, std::uint64_t stream0,
                               std::size_t count, std::uint64_t block,
                               double* col_even, double* col_odd) {
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const std::uint64_t base = stream0 + i;
    const std::uint32_t base_lo = (std::uint32_t)base;
    if (base_lo > 0xFFFFFFFFu - 7u) break;  // 32-bit carry: rare, scalar tail

    Philox8 st;
    st.c0 = _mm256_set1_epi32((int)(std::uint32_t)block);
    st.c1 = _mm256_set1_epi32((int)(std::uint32_t)(block >> 32));
    st.c2 = _mm256_add_epi32(_mm256_set1_epi32((int)base_lo),
                             _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7));
    st.c3 = _mm256_set1_epi32((int)(std::uint32_t)(base >> 32));
    st.k0 = _mm256_set1_epi32((int)(std::uint32_t)seed);
    st.k1 = _mm256_set1_epi32((int)(std::uint32_t)(seed >> 32));
    st.rounds10();

    const auto emit = [&](__m256i xa, __m256i xb, double* dst) {
      const __m256i a = _mm256_unpacklo_epi32(xa, xb);  // streams 0,1 | 4,5
      const __m256i b = _mm256_unpackhi_epi32(xa, xb);  // streams 2,3 | 6,7
      const __m256i r03 = _mm256_permute2x128_si256(a, b, 0x20);
      const __m256i r47 = _mm256_permute2x128_si256(a, b, 0x31);
      _mm256_storeu_pd(dst, bits_to_unit_4(r03));
      _mm256_storeu_pd(dst + 4, bits_to_unit_4(r47));
    };
    emit(st.c0, st.c1, col_even + i);
    emit(st.c2, st.c3, col_odd + i);
  }
  if (i < count)
    scalar_ops().uniform_pair_columns(seed, stream0 + i, count - i, block,
                                      col_even + i, col_odd + i);
}

void std_exponential_avx2(const double* u, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(u + i);
    _mm256_storeu_pd(out + i, std_exponential_core<Avx2Backend>(v));
  }
  for (; i < n; ++i) out[i] = std_exponential_core<ScalarBackend>(u[i]);
}

void linex_terms_avx2(const double* z, double p, double* out, std::size_t n) {
  const __m256d pv = _mm256_set1_pd(p);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(z + i);
    _mm256_storeu_pd(out + i, linex_core<Avx2Backend>(v, pv));
  }
  for (; i < n; ++i) out[i] = linex_core<ScalarBackend>(z[i], p);
}

}  // namespace

const Ops* avx2_ops_impl() {
  static const Ops ops{"avx2", uniform_pair_columns_avx2, std_exponential_avx2,
                       linex_terms_avx2};
  return &ops;
}

}  // namespace ordexp::kernels
