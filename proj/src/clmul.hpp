#pragma once

#include <cstdint>

#if defined(__PCLMUL__)
#include <wmmintrin.h>
#endif

namespace treefloer::detail {

struct Word128 {
    std::uint64_t lo;
    std::uint64_t hi;
};

// Carry-less 64x64 -> 128 multiply.
inline Word128 clmul64(std::uint64_t a, std::uint64_t b) {
#if defined(__PCLMUL__)
    const __m128i x = _mm_set_epi64x(0, static_cast<long long>(a));
    const __m128i y = _mm_set_epi64x(0, static_cast<long long>(b));
    const __m128i r = _mm_clmulepi64_si128(x, y, 0x00);
    return {static_cast<std::uint64_t>(_mm_cvtsi128_si64(r)),
            static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)))};
#else
    // 4-bit windowed shift-and-xor.
    std::uint64_t table[16];
    table[0] = 0;
    table[1] = b & 0x0fffffffffffffffULL;
    for (int i = 2; i < 16; i += 2) {
        table[i] = table[i / 2] << 1;
        table[i + 1] = table[i] ^ table[1];
    }
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    for (int shift = 60; shift >= 0; shift -= 4) {
        hi = (hi << 4) | (lo >> 60);
        lo <<= 4;
        lo ^= table[(a >> shift) & 0xf];
    }
    // Top four bits of b were masked out of the table; add them back.
    for (int bit = 60; bit < 64; ++bit) {
        if ((b >> bit) & 1) {
            lo ^= a << bit;
            hi ^= a >> (64 - bit);
        }
    }
    return {lo, hi};
#endif
}

} // namespace treefloer::detail
