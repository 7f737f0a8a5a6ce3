#pragma once

// GF(2^64) = GF(2)[x]/(x^64 + x^4 + x^3 + x + 1), used to evaluate matrices
// over GF(2)(T) at a point.

#include "clmul.hpp"

#include "treefloer/field.hpp"

#include <optional>

namespace treefloer::detail {

inline std::uint64_t gf64_mul(std::uint64_t a, std::uint64_t b) {
    constexpr std::uint64_t kTail = 0x1b;
    const Word128 p = clmul64(a, b);
    const Word128 q = clmul64(p.hi, kTail);
    const Word128 r = clmul64(q.hi, kTail);
    return p.lo ^ q.lo ^ r.lo;
}

inline std::uint64_t gf64_pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = gf64_mul(r, a);
        a = gf64_mul(a, a);
        e >>= 1;
    }
    return r;
}

/// a^(2^64 - 2); the caller guarantees a != 0.
inline std::uint64_t gf64_inv(std::uint64_t a) { return gf64_pow(a, ~std::uint64_t{1}); }

inline std::uint64_t gf64_eval(const BinPoly& p, std::uint64_t x) {
    std::uint64_t acc = 0;
    for (long d = p.degree(); d >= 0; --d) {
        acc = gf64_mul(acc, x);
        if (p.coeff(static_cast<std::size_t>(d)))
            acc ^= 1;
    }
    return acc;
}

/// Value of f at x, or nothing when x is a pole.
inline std::optional<std::uint64_t> gf64_eval(const RationalFn& f, std::uint64_t x) {
    const std::uint64_t den = gf64_eval(f.den(), x);
    if (den == 0)
        return std::nullopt;
    return gf64_mul(gf64_eval(f.num(), x), gf64_inv(den));
}

} // namespace treefloer::detail
