#include <doctest.h>

#include <random>

#include "hypodense/exactnum.hpp"

using namespace hypodense;

TEST_CASE("dyadic normalizes odd mantissa") {
    Dyadic d(BigInt(12), 0);
    CHECK(d.mantissa() == 3);
    CHECK(d.exponent() == 2);
    CHECK(Dyadic(0).is_zero());
    CHECK(Dyadic(BigInt(0), 17) == Dyadic(0));
}

TEST_CASE("dyadic arithmetic agrees with rationals") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> m(-5000, 5000);
    std::uniform_int_distribution<int> e(-60, 60);
    for (int t = 0; t < 500; ++t) {
        Dyadic x(BigInt(m(rng)), e(rng)), y(BigInt(m(rng)), e(rng));
        // oracle: mpq arithmetic on the materialized values
        Rational qx = Rational(x.mantissa()) * (x.exponent() >= 0 ? Rational(BigInt(1) << x.exponent(), 1)
                                                                  : Rational(1, BigInt(1) << -x.exponent()));
        qx.canonicalize();
        CHECK(x.to_rational() == qx);
        CHECK((x + y).to_rational() == x.to_rational() + y.to_rational());
        CHECK((x * y).to_rational() == x.to_rational() * y.to_rational());
        CHECK(((x <=> y) < 0) == (x.to_rational() < y.to_rational()));
    }
}

TEST_CASE("dyadic text roundtrip") {
    for (const char* s : {"3*2^-5", "-1*2^7", "0*2^0", "5"}) {
        Dyadic d = Dyadic::parse(s);
        CHECK(Dyadic::parse(d.to_string()) == d);
    }
    CHECK(Dyadic::parse("3*2^-5").to_rational() == Rational(3, 32));
    CHECK_THROWS_AS(Dyadic::parse("abc"), ParseError);
    CHECK_THROWS_AS(Dyadic::from_rational(Rational(1, 3)), InvalidArgument);
}

TEST_CASE("pow2 compares in exponent space") {
    Pow2 a(BigInt("-100000000000000000000")), b(BigInt(-5));
    CHECK(a < b);
    CHECK(pow2_leq(a.squared(), a));
    CHECK((a * b).exponent() == a.exponent() + b.exponent());
    CHECK_THROWS_AS(a.materialize(), ExponentOverflow);
    CHECK(Pow2(std::int64_t{-3}).materialize().to_rational() == Rational(1, 8));
}

TEST_CASE("checked exponent arithmetic") {
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), ExponentOverflow);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), ExponentOverflow);
    CHECK(checked_mul(-4, 5) == -20);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("-2") == Rational(-2));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
}
