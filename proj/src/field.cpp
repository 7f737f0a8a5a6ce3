#include "treefloer/field.hpp"

#include "treefloer/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "clmul.hpp"

namespace treefloer {

namespace {

// In-place helpers on trimmed word vectors.
long top_degree(const std::vector<std::uint64_t>& w) {
    return w.empty() ? -1 : static_cast<long>(64 * (w.size() - 1) + 63 - std::countl_zero(w.back()));
}

std::size_t low_zero_bits(const std::vector<std::uint64_t>& w) {
    std::size_t i = 0;
    while (w[i] == 0)
        ++i;
    return 64 * i + static_cast<std::size_t>(std::countr_zero(w[i]));
}

void shift_right_in_place(std::vector<std::uint64_t>& w, std::size_t k) {
    const std::size_t ws = k / 64;
    const unsigned bs = k % 64;
    const std::size_t n = w.size() - ws;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t v = w[i + ws] >> bs;
        if (bs != 0 && i + ws + 1 < w.size())
            v |= w[i + ws + 1] << (64 - bs);
        w[i] = v;
    }
    w.resize(n);
    while (!w.empty() && w.back() == 0)
        w.pop_back();
}


} // namespace

BinPoly BinPoly::monomial(std::size_t degree) {
    std::vector<std::uint64_t> w(degree / 64 + 1, 0);
    w[degree / 64] = std::uint64_t{1} << (degree % 64);
    return BinPoly(std::move(w));
}

BinPoly BinPoly::from_exponents(std::initializer_list<std::size_t> exps) {
    BinPoly p;
    for (auto e : exps)
        p += monomial(e);
    return p;
}

BinPoly BinPoly::from_words(std::vector<std::uint64_t> words) { return BinPoly(std::move(words)); }

void BinPoly::trim() noexcept {
    while (!words_.empty() && words_.back() == 0)
        words_.pop_back();
}

long BinPoly::degree() const noexcept {
    if (words_.empty())
        return -1;
    return static_cast<long>((words_.size() - 1) * 64 + 63 - std::countl_zero(words_.back()));
}

bool BinPoly::coeff(std::size_t i) const noexcept {
    const std::size_t w = i / 64;
    return w < words_.size() && ((words_[w] >> (i % 64)) & 1);
}

std::size_t BinPoly::trailing_zeros() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] != 0)
            return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return 0;
}

BinPoly& BinPoly::operator+=(const BinPoly& rhs) {
    if (rhs.words_.size() > words_.size())
        words_.resize(rhs.words_.size(), 0);
    for (std::size_t i = 0; i < rhs.words_.size(); ++i)
        words_[i] ^= rhs.words_[i];
    trim();
    return *this;
}

BinPoly operator*(const BinPoly& lhs, const BinPoly& rhs) {
    if (lhs.is_zero() || rhs.is_zero())
        return {};
    if (lhs.is_one())
        return rhs;
    if (rhs.is_one())
        return lhs;
    std::vector<std::uint64_t> out(lhs.words_.size() + rhs.words_.size(), 0);
    for (std::size_t i = 0; i < lhs.words_.size(); ++i) {
        const std::uint64_t a = lhs.words_[i];
        if (a == 0)
            continue;
        for (std::size_t j = 0; j < rhs.words_.size(); ++j) {
            const detail::Word128 r = detail::clmul64(a, rhs.words_[j]);
            out[i + j] ^= r.lo;
            out[i + j + 1] ^= r.hi;
        }
    }
    return BinPoly(std::move(out));
}

BinPoly BinPoly::shifted_up(std::size_t k) const {
    if (is_zero())
        return {};
    const std::size_t ws = k / 64;
    const unsigned bs = k % 64;
    std::vector<std::uint64_t> out(words_.size() + ws + 1, 0);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        out[i + ws] ^= words_[i] << bs;
        if (bs != 0)
            out[i + ws + 1] ^= words_[i] >> (64 - bs);
    }
    return BinPoly(std::move(out));
}

BinPoly BinPoly::shifted_down(std::size_t k) const {
    const std::size_t ws = k / 64;
    const unsigned bs = k % 64;
    if (ws >= words_.size())
        return {};
    std::vector<std::uint64_t> out(words_.size() - ws, 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = words_[i + ws] >> bs;
        if (bs != 0 && i + ws + 1 < words_.size())
            out[i] |= words_[i + ws + 1] << (64 - bs);
    }
    return BinPoly(std::move(out));
}

void BinPoly::xor_shifted(const BinPoly& src, std::size_t shift) {
    const std::size_t ws = shift / 64;
    const unsigned bs = shift % 64;
    const std::size_t need = src.words_.size() + ws + 1;
    if (words_.size() < need)
        words_.resize(need, 0);
    for (std::size_t i = 0; i < src.words_.size(); ++i) {
        words_[i + ws] ^= src.words_[i] << bs;
        if (bs != 0)
            words_[i + ws + 1] ^= src.words_[i] >> (64 - bs);
    }
    trim();
}

std::pair<BinPoly, BinPoly> BinPoly::divmod(const BinPoly& num, const BinPoly& den) {
    if (den.is_zero())
        throw Error(ErrorKind::DivideByZero, "exactfield", "polynomial division by zero");
    const long db = den.degree();
    BinPoly rem = num;
    long dr = rem.degree();
    if (dr < db)
        return {BinPoly{}, std::move(rem)};
    std::vector<std::uint64_t> q(static_cast<std::size_t>(dr - db) / 64 + 1, 0);
    while (dr >= db) {
        const auto s = static_cast<std::size_t>(dr - db);
        q[s / 64] |= std::uint64_t{1} << (s % 64);
        rem.xor_shifted(den, s);
        dr = rem.degree();
    }
    return {BinPoly(std::move(q)), std::move(rem)};
}

BinPoly BinPoly::exact_div(const BinPoly& num, const BinPoly& den) {
    if (den.is_one())
        return num;
    return divmod(num, den).first;
}

BinPoly BinPoly::gcd(BinPoly a, BinPoly b) {
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.is_one() || b.is_one())
        return one();
    const std::size_t ta = a.trailing_zeros();
    const std::size_t tb = b.trailing_zeros();
    const std::size_t common = std::min(ta, tb);
    std::vector<std::uint64_t> x = a.shifted_down(ta).words_;
    std::vector<std::uint64_t> y = b.shifted_down(tb).words_;
    // Binary gcd in place: both operands are odd at the top of the loop.
    while (true) {
        if (top_degree(x) < top_degree(y))
            std::swap(x, y);
        for (std::size_t i = 0; i < y.size(); ++i)
            x[i] ^= y[i];
        while (!x.empty() && x.back() == 0)
            x.pop_back();
        if (x.empty())
            break;
        shift_right_in_place(x, low_zero_bits(x));
    }
    BinPoly g(std::move(y));
    return common == 0 ? g : g.shifted_up(common);
}

bool operator<(const BinPoly& a, const BinPoly& b) {
    if (a.words_.size() != b.words_.size())
        return a.words_.size() < b.words_.size();
    for (std::size_t i = a.words_.size(); i-- > 0;)
        if (a.words_[i] != b.words_[i])
            return a.words_[i] < b.words_[i];
    return false;
}

std::string BinPoly::to_string() const {
    if (is_zero())
        return "0";
    std::string out;
    for (long d = degree(); d >= 0; --d) {
        if (!coeff(static_cast<std::size_t>(d)))
            continue;
        if (!out.empty())
            out += " + ";
        if (d == 0)
            out += "1";
        else if (d == 1)
            out += "T";
        else
            out += "T^" + std::to_string(d);
    }
    return out;
}

BinPoly BinPoly::parse(std::string_view text) {
    auto fail = [&] {
        throw Error(ErrorKind::MalformedInput, "exactfield",
                    "cannot parse polynomial '" + std::string(text) + "'");
    };
    BinPoly out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    auto read_uint = [&]() -> std::size_t {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            fail();
        std::size_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
        return v;
    };
    skip_ws();
    if (i == text.size())
        fail();
    while (true) {
        skip_ws();
        if (i < text.size() && text[i] == 'T') {
            ++i;
            std::size_t e = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                e = read_uint();
            }
            out += monomial(e);
        } else {
            const std::size_t c = read_uint();
            if (c > 1)
                fail();
            if (c == 1)
                out += one();
        }
        skip_ws();
        if (i == text.size())
            break;
        if (text[i] != '+')
            fail();
        ++i;
    }
    return out;
}

std::size_t BinPoly::hash() const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto w : words_) {
        h ^= static_cast<std::size_t>(w);
        h *= 1099511628211ULL;
    }
    return h;
}

// ---------------------------------------------------------------------------

RationalFn::RationalFn(BinPoly num) : num_(std::move(num)), den_(BinPoly::one()) {}

RationalFn::RationalFn(BinPoly num, BinPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        throw Error(ErrorKind::DivideByZero, "exactfield", "zero denominator");
    reduce();
}

void RationalFn::reduce() {
    if (num_.is_zero()) {
        den_ = BinPoly::one();
        return;
    }
    if (den_.is_one())
        return;
    BinPoly g = BinPoly::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = BinPoly::exact_div(num_, g);
        den_ = BinPoly::exact_div(den_, g);
    }
}

RationalFn RationalFn::tpow(long k) {
    if (k >= 0)
        return RationalFn(BinPoly::monomial(static_cast<std::size_t>(k)));
    RationalFn r;
    r.num_ = BinPoly::one();
    r.den_ = BinPoly::monomial(static_cast<std::size_t>(-k));
    return r;
}

RationalFn RationalFn::one_plus_tpow(long k) {
    if (k == 0)
        return {};
    const auto a = static_cast<std::size_t>(k > 0 ? k : -k);
    RationalFn r(BinPoly::one() + BinPoly::monomial(a));
    if (k < 0)
        r.den_ = BinPoly::monomial(a); // (T^a + 1)/T^a is already reduced
    return r;
}

RationalFn& RationalFn::operator+=(const RationalFn& rhs) {
    if (rhs.is_zero())
        return *this;
    if (is_zero())
        return *this = rhs;
    if (den_ == rhs.den_) {
        num_ += rhs.num_;
        reduce();
        return *this;
    }
    // Henrici: only the gcd of the denominators can cancel.
    BinPoly g = BinPoly::gcd(den_, rhs.den_);
    if (g.is_one()) {
        num_ = num_ * rhs.den_ + rhs.num_ * den_;
        den_ = den_ * rhs.den_;
        if (num_.is_zero())
            den_ = BinPoly::one();
        return *this;
    }
    BinPoly d1 = BinPoly::exact_div(den_, g);
    BinPoly d2 = BinPoly::exact_div(rhs.den_, g);
    num_ = num_ * d2 + rhs.num_ * d1;
    den_ = d1 * rhs.den_;
    if (num_.is_zero()) {
        den_ = BinPoly::one();
        return *this;
    }
    BinPoly h = BinPoly::gcd(num_, g);
    if (!h.is_one()) {
        num_ = BinPoly::exact_div(num_, h);
        den_ = BinPoly::exact_div(den_, h);
    }
    return *this;
}

RationalFn& RationalFn::operator*=(const RationalFn& rhs) {
    if (is_zero() || rhs.is_zero())
        return *this = RationalFn{};
    BinPoly g1 = BinPoly::gcd(num_, rhs.den_);
    BinPoly g2 = BinPoly::gcd(rhs.num_, den_);
    num_ = BinPoly::exact_div(num_, g1) * BinPoly::exact_div(rhs.num_, g2);
    den_ = BinPoly::exact_div(den_, g2) * BinPoly::exact_div(rhs.den_, g1);
    return *this;
}

RationalFn RationalFn::inv() const {
    if (is_zero())
        throw Error(ErrorKind::DivideByZero, "exactfield", "inverse of zero");
    RationalFn r;
    r.num_ = den_;
    r.den_ = num_;
    return r;
}

std::string RationalFn::to_string() const {
    if (den_.is_one())
        return num_.to_string();
    auto wrap = [](const BinPoly& p) {
        std::string s = p.to_string();
        return s.find('+') == std::string::npos ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
}

RationalFn RationalFn::parse(std::string_view text) {
    auto strip = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
            s = s.substr(1, s.size() - 2);
        return s;
    };
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(')
            ++depth;
        else if (text[i] == ')')
            --depth;
        else if (text[i] == '/' && depth == 0)
            return RationalFn(BinPoly::parse(strip(text.substr(0, i))),
                              BinPoly::parse(strip(text.substr(i + 1))));
    }
    return RationalFn(BinPoly::parse(strip(text)));
}

} // namespace treefloer
