// AVX2 kernel variants. This translation unit is the only one compiled with
// -mavx2; it must never be entered unless the dispatcher verified CPU support.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>
#include <cstring>

namespace grasslab::kernels::avx2 {

// Low 64 bits of a 64x64 product per lane (AVX2 has no mullo_epi64).
// Correct for signed operands because truncation mod 2^64 matches two's
// complement; callers guarantee the true product fits in int64 anyway.
static inline __m256i mullo_epi64(__m256i a, __m256i b) {
    __m256i bswap = _mm256_shuffle_epi32(b, 0xB1);   // swap 32-bit halves
    __m256i prodlh = _mm256_mullo_epi32(a, bswap);   // a_lo*b_hi, a_hi*b_lo
    __m256i zero = _mm256_setzero_si256();
    __m256i prodlh2 = _mm256_hadd_epi32(prodlh, zero);
    __m256i prodlh3 = _mm256_shuffle_epi32(prodlh2, 0x73);
    __m256i prodll = _mm256_mul_epu32(a, b);         // a_lo*b_lo, full 64
    return _mm256_add_epi64(prodll, prodlh3);
}

void i64_axpy(std::int64_t* y, const std::int64_t* x, std::int64_t a, std::size_t len) {
    const __m256i av = _mm256_set1_epi64x(a);
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
        __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + j));
        __m256i yv = _mm256_loadu_si256(reinterpret_cast<__m256i*>(y + j));
        yv = _mm256_add_epi64(yv, mullo_epi64(av, xv));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + j), yv);
    }
    for (; j < len; ++j) y[j] += a * x[j];
}

void i64_matmul(std::int64_t* c, const std::int64_t* a, const std::int64_t* b,
                std::size_t r, std::size_t m, std::size_t cols) {
    std::memset(c, 0, r * cols * sizeof(std::int64_t));
    for (std::size_t i = 0; i < r; ++i) {
        std::int64_t* crow = c + i * cols;
        const std::int64_t* arow = a + i * m;
        for (std::size_t t = 0; t < m; ++t) {
            if (arow[t] != 0) i64_axpy(crow, b + t * cols, arow[t], cols);
        }
    }
}

void xor_eliminate_column(std::uint64_t* rows, std::size_t len,
                          std::uint64_t pivot, unsigned bit) {
    const __m256i pv = _mm256_set1_epi64x(static_cast<long long>(pivot));
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i zero = _mm256_setzero_si256();
    std::size_t j = 0;
    for (; j + 4 <= len; j += 4) {
        __m256i rv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + j));
        __m256i bitv = _mm256_and_si256(_mm256_srli_epi64(rv, static_cast<int>(bit)), one);
        __m256i mask = _mm256_sub_epi64(zero, bitv);
        rv = _mm256_xor_si256(rv, _mm256_and_si256(pv, mask));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(rows + j), rv);
    }
    for (; j < len; ++j) {
        rows[j] ^= pivot & (0ull - ((rows[j] >> bit) & 1ull));
    }
}

}  // namespace grasslab::kernels::avx2

#endif  // x86_64
