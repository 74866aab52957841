#include "hypodense/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace hypodense {

std::int64_t exponent_cap() {
    static const std::int64_t cap = [] {
        const char* env = std::getenv("HYPODENSE_EXPONENT_CAP");
        if (env == nullptr || *env == '\0') return std::int64_t{1'000'000};
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0) return std::int64_t{1'000'000};
        return static_cast<std::int64_t>(v);
    }();
    return cap;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty integer");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("malformed integer '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw ParseError("malformed integer '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s, 10);
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_bigint(text));
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return make_rational(num, den);
}

std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const BigInt& z) { return z.get_str(); }

double to_display(const Rational& q) { return q.get_d(); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ExponentOverflow("exponent addition overflows 64 bits");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ExponentOverflow("exponent product overflows 64 bits");
    return r;
}

std::int64_t to_int64(const BigInt& z) {
    if (!z.fits_slong_p()) throw ExponentOverflow("integer " + z.get_str() + " does not fit 64 bits");
    return static_cast<std::int64_t>(z.get_si());
}

std::uint64_t to_uint64(const BigInt& z) {
    if (sgn(z) < 0 || !z.fits_ulong_p())
        throw ExponentOverflow("integer " + z.get_str() + " is not a 64-bit natural");
    return static_cast<std::uint64_t>(z.get_ui());
}

// ---------------------------------------------------------------- Dyadic

Dyadic::Dyadic(std::int64_t m) : mantissa_(static_cast<long>(m)) { normalize(); }

Dyadic::Dyadic(BigInt mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
    normalize();
}

Dyadic Dyadic::pow2(std::int64_t exponent) { return Dyadic(BigInt(1), exponent); }

void Dyadic::normalize() {
    if (sgn(mantissa_) == 0) {
        exponent_ = 0;
        return;
    }
    mp_bitcnt_t tz = mpz_scan1(mantissa_.get_mpz_t(), 0);
    if (tz > 0) {
        mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), tz);
        exponent_ = checked_add(exponent_, static_cast<std::int64_t>(tz));
    }
}

Dyadic Dyadic::operator-() const {
    Dyadic r = *this;
    r.mantissa_ = -r.mantissa_;
    return r;
}

Dyadic Dyadic::abs() const {
    Dyadic r = *this;
    r.mantissa_ = ::abs(r.mantissa_);
    return r;
}

Dyadic Dyadic::times_pow2(std::int64_t shift) const {
    if (is_zero()) return *this;
    Dyadic r = *this;
    r.exponent_ = checked_add(exponent_, shift);
    return r;
}

Dyadic operator+(const Dyadic& x, const Dyadic& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    Dyadic r;
    if (x.exponent_ == y.exponent_) {
        r.mantissa_ = x.mantissa_ + y.mantissa_;
        r.exponent_ = x.exponent_;
    } else if (x.exponent_ < y.exponent_) {
        std::int64_t d = checked_add(y.exponent_, -x.exponent_);
        BigInt shifted;
        mpz_mul_2exp(shifted.get_mpz_t(), y.mantissa_.get_mpz_t(), static_cast<mp_bitcnt_t>(d));
        r.mantissa_ = x.mantissa_ + shifted;
        r.exponent_ = x.exponent_;
    } else {
        return y + x;
    }
    r.normalize();
    return r;
}

Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }

Dyadic operator*(const Dyadic& x, const Dyadic& y) {
    if (x.is_zero() || y.is_zero()) return Dyadic();
    // Product of odd mantissas is odd: already canonical.
    Dyadic r;
    r.mantissa_ = x.mantissa_ * y.mantissa_;
    r.exponent_ = checked_add(x.exponent_, y.exponent_);
    return r;
}

std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) {
    int c;
    if (x.sign() != y.sign()) {
        c = x.sign() < y.sign() ? -1 : 1;
    } else {
        Dyadic d = x - y;
        c = d.sign();
    }
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Rational Dyadic::to_rational() const {
    Rational q(mantissa_);
    if (exponent_ >= 0) {
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent_));
    } else {
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent_));
    }
    return q;
}

double Dyadic::to_display() const {
    long e = 0;
    double m = mpz_get_d_2exp(&e, mantissa_.get_mpz_t());
    return std::ldexp(m, static_cast<int>(std::max<std::int64_t>(
                             std::min<std::int64_t>(e + exponent_, 100000), -100000)));
}

std::string Dyadic::to_string() const {
    return mantissa_.get_str() + "*2^" + std::to_string(exponent_);
}

Dyadic Dyadic::parse(std::string_view text) {
    auto star = text.find("*2^");
    if (star == std::string_view::npos) return Dyadic(parse_bigint(text), 0);
    BigInt m = parse_bigint(text.substr(0, star));
    BigInt e = parse_bigint(text.substr(star + 3));
    if (!e.fits_slong_p()) throw ParseError("dyadic exponent out of range");
    return Dyadic(m, e.get_si());
}

Dyadic Dyadic::from_rational(const Rational& q) {
    const BigInt& den = q.get_den();
    if (mpz_popcount(den.get_mpz_t()) != 1)
        throw InvalidArgument("rational " + hypodense::to_string(q) + " is not dyadic");
    auto shift = static_cast<std::int64_t>(mpz_scan1(den.get_mpz_t(), 0));
    return Dyadic(q.get_num(), -shift);
}

int compare(const Dyadic& x, const Rational& q) { return cmp(x.to_rational(), q); }

// ---------------------------------------------------------------- Pow2

Dyadic Pow2::materialize(std::int64_t cap) const {
    if (mpz_cmpabs(exponent_.get_mpz_t(), BigInt(static_cast<long>(cap)).get_mpz_t()) > 0)
        throw ExponentOverflow("2^" + exponent_.get_str() + " exceeds the materialization cap " +
                               std::to_string(cap));
    return Dyadic::pow2(exponent_.get_si());
}

std::string Pow2::to_string() const { return "2^" + exponent_.get_str(); }

}  // namespace hypodense
