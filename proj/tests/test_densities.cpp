#include <doctest.h>

#include <random>

#include "hypodense/densities.hpp"
#include "oracle.hpp"

using namespace hypodense;

TEST_CASE("index sets count like brute force") {
    std::vector<IndexSet> sets{IndexSet::evens(),
                               IndexSet::periodic({1, 4, 5}, 7),
                               IndexSet::geometric_blocks(4, 1, 2, 0),
                               IndexSet::block_union({{3, 9}, {20, 21}, {40, 70}}),
                               IndexSet::explicit_set({0, 5, 6, 100}),
                               IndexSet::complement_of(IndexSet::geometric_blocks(3, 1, 2, 1))};
    for (const auto& s : sets) {
        std::uint64_t c = 0;
        for (std::uint64_t n = 0; n < 3000; ++n) {
            CHECK(s.prefix_count(n) == c);
            c += s.contains(n);
        }
        auto m = s.members(17, 260);
        std::uint64_t direct = 0;
        for (std::uint64_t n = 17; n < 260; ++n) direct += s.contains(n);
        CHECK(m.size() == direct);
    }
}

TEST_CASE("geometric membership") {
    auto s = IndexSet::geometric_blocks(4, 1, 2, 0);
    CHECK(s.contains(1));
    CHECK_FALSE(s.contains(2));
    CHECK(s.contains(4));
    CHECK(s.contains(7));
    CHECK_FALSE(s.contains(8));
    CHECK(s.contains(16));
    CHECK_FALSE(s.contains(0));
}

TEST_CASE("weighted quotients match direct summation") {
    std::vector<WeightSeq> ws{WeightSeq::unit(), WeightSeq::harmonic(), WeightSeq::block_constant({0, 3, 10}),
                              WeightSeq::table({Rational(5), Rational(1, 3)}, WeightSeq::harmonic())};
    auto set = IndexSet::periodic({0, 2, 3}, 5);
    for (const auto& w : ws)
        for (std::uint64_t N : {1u, 2u, 7u, 50u, 333u}) CHECK(density_quotient(set, w, N) == oracle::quotient(set, w, N));
}

TEST_CASE("empty prefix is rejected") {
    CHECK_THROWS_AS(density_quotient(IndexSet::evens(), WeightSeq::unit(), 0), InvalidArgument);
}

TEST_CASE("duality is exact") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> N(1, 3000);
    for (int t = 0; t < 40; ++t) {
        auto set = IndexSet::periodic({0, 3}, 4 + t % 5);
        auto w = t % 2 ? WeightSeq::harmonic() : WeightSeq::block_constant({0, 1 + static_cast<std::uint64_t>(t)});
        const auto n = N(rng);
        CHECK(density_quotient(set, w, n) + density_quotient(set.complement(), w, n) == 1);
        CHECK(duality_check(set, w, n));
    }
}

TEST_CASE("evens have density one half") {
    auto r = estimate_densities(IndexSet::evens(), WeightSeq::unit(), 100000);
    CHECK(r.lower_estimate <= Rational(1, 2));
    CHECK(r.upper_estimate >= Rational(1, 2));
    CHECK(r.upper_estimate - r.lower_estimate < Rational(1, 1000));
    CHECK(r.checkpoints.back() == 100000);
}

TEST_CASE("block set oscillates between one third and two thirds") {
    auto r = estimate_densities(IndexSet::geometric_blocks(4, 1, 2, 0), WeightSeq::unit(), 1u << 20);
    CHECK(to_display(r.lower_estimate) == doctest::Approx(1.0 / 3).epsilon(0.01));
    CHECK(to_display(r.upper_estimate) == doctest::Approx(2.0 / 3).epsilon(0.01));
}

TEST_CASE("monotone chain needs a certificate") {
    auto set = IndexSet::geometric_blocks(4, 1, 2, 0);
    CHECK_THROWS_AS(monotonicity_check(set, WeightSeq::unit(), WeightSeq::harmonic(), 1000), CertificateFailed);
    auto m = monotonicity_check(set, WeightSeq::harmonic(), WeightSeq::unit(), 1u << 16);
    CHECK(m.chain_holds(Rational(1, 20)));
}

TEST_CASE("ratio drop indices and the shift gap") {
    auto w = WeightSeq::block_constant({0, 1, 2, 4, 8});
    auto d = ratio_drop_indices(w, Rational(1, 2), 40);
    for (auto n : d.indices) CHECK(w.value(n + 1) <= w.value(n) / 2);
    CHECK(d.geometric_bound_holds);
    for (std::uint64_t N = 1; N < 200; N += 7) {
        auto g = shift_quotient_gap(IndexSet::periodic({1, 2}, 5), w, Rational(1, 2), N);
        CHECK(g.gap >= 0);
    }
}
