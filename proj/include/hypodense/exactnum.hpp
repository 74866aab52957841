#pragma once

// Exact scalar substrate.
//
//   Rational  - canonical p/q over GMP integers (q >= 1, gcd(|p|, q) = 1).
//   Dyadic    - m * 2^e with m odd or zero; zero is (0, 0).
//   Pow2      - 2^e with an arbitrary-precision exponent, never materialized
//               unless the exponent is within the configured cap.
//
// Nothing here touches floating point except the *_display helpers, which
// exist only for human-readable output columns.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "hypodense/errors.hpp"

namespace hypodense {

using BigInt = mpz_class;
using Rational = mpq_class;

// Materialization bound for powers of two. Reads HYPODENSE_EXPONENT_CAP on
// first use; defaults to 10^6.
std::int64_t exponent_cap();

Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

// "p/q" or "p"; the result is canonicalized. Throws ParseError.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_display(const Rational& q);

std::string to_string(const BigInt& z);
BigInt parse_bigint(std::string_view text);

// Checked machine-word exponent arithmetic.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t to_int64(const BigInt& z);
std::uint64_t to_uint64(const BigInt& z);

class Dyadic {
public:
    Dyadic() = default;
    Dyadic(std::int64_t m);  // NOLINT: integers are dyadic
    Dyadic(BigInt mantissa, std::int64_t exponent);

    static Dyadic pow2(std::int64_t exponent);

    const BigInt& mantissa() const noexcept { return mantissa_; }
    std::int64_t exponent() const noexcept { return exponent_; }

    bool is_zero() const noexcept { return sgn(mantissa_) == 0; }
    int sign() const noexcept { return sgn(mantissa_); }

    Dyadic operator-() const;
    Dyadic abs() const;
    // Multiply by 2^shift; stays dyadic.
    Dyadic times_pow2(std::int64_t shift) const;

    friend Dyadic operator+(const Dyadic& x, const Dyadic& y);
    friend Dyadic operator-(const Dyadic& x, const Dyadic& y);
    friend Dyadic operator*(const Dyadic& x, const Dyadic& y);
    Dyadic& operator+=(const Dyadic& y) { return *this = *this + y; }
    Dyadic& operator-=(const Dyadic& y) { return *this = *this - y; }
    Dyadic& operator*=(const Dyadic& y) { return *this = *this * y; }

    friend bool operator==(const Dyadic& x, const Dyadic& y) {
        return x.exponent_ == y.exponent_ && x.mantissa_ == y.mantissa_;
    }
    friend std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y);

    Rational to_rational() const;
    double to_display() const;

    // "m*2^e"
    std::string to_string() const;
    static Dyadic parse(std::string_view text);
    // Exact conversion; throws InvalidArgument when the denominator is not a
    // power of two.
    static Dyadic from_rational(const Rational& q);

private:
    void normalize();

    BigInt mantissa_{0};
    std::int64_t exponent_ = 0;
};

int compare(const Dyadic& x, const Rational& q);

class Pow2 {
public:
    Pow2() = default;
    explicit Pow2(BigInt exponent) : exponent_(std::move(exponent)) {}
    explicit Pow2(std::int64_t exponent) : exponent_(static_cast<long>(exponent)) {}

    const BigInt& exponent() const noexcept { return exponent_; }

    Pow2 squared() const { return Pow2(BigInt(exponent_ * 2)); }
    Pow2 inverse() const { return Pow2(BigInt(-exponent_)); }
    friend Pow2 operator*(const Pow2& x, const Pow2& y) { return Pow2(BigInt(x.exponent_ + y.exponent_)); }
    friend Pow2 operator/(const Pow2& x, const Pow2& y) { return Pow2(BigInt(x.exponent_ - y.exponent_)); }

    friend bool operator==(const Pow2& x, const Pow2& y) { return x.exponent_ == y.exponent_; }
    friend std::strong_ordering operator<=>(const Pow2& x, const Pow2& y) {
        int c = cmp(x.exponent_, y.exponent_);
        return c < 0 ? std::strong_ordering::less
                     : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    // Throws ExponentOverflow when |exponent| exceeds the cap.
    Dyadic materialize(std::int64_t cap = exponent_cap()) const;

    // "2^e"
    std::string to_string() const;

private:
    BigInt exponent_{0};
};

inline bool pow2_leq(const Pow2& x, const Pow2& y) { return x <= y; }

}  // namespace hypodense
