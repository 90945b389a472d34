// Compiled with -mavx2; only reached after a runtime CPU check.

#include "motsteen/fp_kernels.hpp"

#include <immintrin.h>

namespace motsteen::fp {

namespace {

// Barrett reduction of 32-bit lanes v < p^2 < 2^32 with m = floor(2^32 / p).
inline __m256i reduce(__m256i v, __m256i m, __m256i p)
{
    const __m256i hi_mask = _mm256_set1_epi64x(std::int64_t(0xffffffff00000000ull));
    __m256i q_even = _mm256_srli_epi64(_mm256_mul_epu32(v, m), 32);
    __m256i q_odd = _mm256_and_si256(_mm256_mul_epu32(_mm256_srli_epi64(v, 32), m), hi_mask);
    __m256i q = _mm256_or_si256(q_even, q_odd);
    __m256i r = _mm256_sub_epi32(v, _mm256_mullo_epi32(q, p));
    // r lies in [0, 2p); subtract p once where needed.
    return _mm256_min_epu32(r, _mm256_sub_epi32(r, p));
}

}  // namespace

void axpy_avx2(std::uint32_t* y, const std::uint32_t* x, std::size_t n, std::uint32_t a, std::uint32_t p)
{
    const __m256i vp = _mm256_set1_epi32(int(p));
    const __m256i vm = _mm256_set1_epi32(int(std::uint32_t((std::uint64_t(1) << 32) / p)));
    const __m256i va = _mm256_set1_epi32(int(a));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i vx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
        __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        __m256i prod = reduce(_mm256_mullo_epi32(vx, va), vm, vp);
        __m256i sum = _mm256_add_epi32(vy, prod);
        sum = _mm256_min_epu32(sum, _mm256_sub_epi32(sum, vp));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), sum);
    }
    axpy_scalar(y + i, x + i, n - i, a, p);
}

void scale_avx2(std::uint32_t* y, std::size_t n, std::uint32_t a, std::uint32_t p)
{
    const __m256i vp = _mm256_set1_epi32(int(p));
    const __m256i vm = _mm256_set1_epi32(int(std::uint32_t((std::uint64_t(1) << 32) / p)));
    const __m256i va = _mm256_set1_epi32(int(a));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i vy = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), reduce(_mm256_mullo_epi32(vy, va), vm, vp));
    }
    scale_scalar(y + i, n - i, a, p);
}

}  // namespace motsteen::fp
