#pragma once

// Exact arithmetic in GF(2)[T] and its fraction field GF(2)(T).

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treefloer {

/// Polynomial over GF(2), bit-packed lowest degree first. The word vector
/// never has a trailing zero word, so the zero polynomial is the empty vector
/// and equal polynomials compare equal word for word.
class BinPoly {
public:
    BinPoly() = default;

    static BinPoly one() { return monomial(0); }
    static BinPoly monomial(std::size_t degree);
    /// Sum of T^e over the given exponents (repeats cancel).
    static BinPoly from_exponents(std::initializer_list<std::size_t> exps);
    static BinPoly from_words(std::vector<std::uint64_t> words);

    bool is_zero() const noexcept { return words_.empty(); }
    bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }
    /// Degree, or -1 for the zero polynomial.
    long degree() const noexcept;
    bool coeff(std::size_t i) const noexcept;
    /// Exponent of the largest power of T dividing this polynomial (0 for zero).
    std::size_t trailing_zeros() const noexcept;
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    BinPoly& operator+=(const BinPoly& rhs);
    friend BinPoly operator+(BinPoly lhs, const BinPoly& rhs) { return lhs += rhs; }
    friend BinPoly operator*(const BinPoly& lhs, const BinPoly& rhs);
    BinPoly& operator*=(const BinPoly& rhs) { return *this = *this * rhs; }

    BinPoly shifted_up(std::size_t k) const;   // times T^k
    BinPoly shifted_down(std::size_t k) const; // floor division by T^k

    /// Quotient and remainder; throws DivideByZero on a zero divisor.
    static std::pair<BinPoly, BinPoly> divmod(const BinPoly& num, const BinPoly& den);
    /// Exact quotient; the caller guarantees den divides num.
    static BinPoly exact_div(const BinPoly& num, const BinPoly& den);
    /// Greatest common divisor; gcd(0, 0) = 0.
    static BinPoly gcd(BinPoly a, BinPoly b);

    friend bool operator==(const BinPoly&, const BinPoly&) = default;
    /// Total order (degree first) used for canonical sorting only.
    friend bool operator<(const BinPoly& a, const BinPoly& b);

    /// "T^3 + T + 1"; "0" for zero.
    std::string to_string() const;
    static BinPoly parse(std::string_view text);

    std::size_t hash() const noexcept;

private:
    explicit BinPoly(std::vector<std::uint64_t> w) : words_(std::move(w)) { trim(); }
    void trim() noexcept;
    void xor_shifted(const BinPoly& src, std::size_t shift);

    std::vector<std::uint64_t> words_;
};

/// Element of GF(2)(T) kept as a reduced fraction num/den with den != 0.
/// Zero is 0/1. Negative powers of T live in the denominator.
class RationalFn {
public:
    RationalFn() : num_(), den_(BinPoly::one()) {}
    RationalFn(BinPoly num); // NOLINT(google-explicit-constructor)
    RationalFn(BinPoly num, BinPoly den);

    static RationalFn zero() { return {}; }
    static RationalFn one() { return RationalFn(BinPoly::one()); }
    /// T^k for any integer k.
    static RationalFn tpow(long k);
    /// 1 + T^k; zero exactly when k == 0.
    static RationalFn one_plus_tpow(long k);

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
    const BinPoly& num() const noexcept { return num_; }
    const BinPoly& den() const noexcept { return den_; }

    RationalFn& operator+=(const RationalFn& rhs);
    RationalFn& operator*=(const RationalFn& rhs);
    friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
    friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
    RationalFn inv() const;
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inv(); }

    friend bool operator==(const RationalFn&, const RationalFn&) = default;

    /// "(T^2 + 1)/(T^5 + T + 1)", or just the numerator when den = 1.
    std::string to_string() const;
    static RationalFn parse(std::string_view text);

private:
    void reduce();

    BinPoly num_;
    BinPoly den_;
};

} // namespace treefloer

template <>
struct std::hash<treefloer::BinPoly> {
    std::size_t operator()(const treefloer::BinPoly& p) const noexcept { return p.hash(); }
};
