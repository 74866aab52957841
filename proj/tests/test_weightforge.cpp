#include <doctest.h>

#include "hypodense/densities.hpp"
#include "hypodense/weightforge.hpp"

using namespace hypodense;

namespace {

// brute-force block density straight from membership
Rational block_density(const IndexSet& s, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for (std::uint64_t n = lo; n < hi; ++n) c += s.contains(n);
    return Rational(static_cast<unsigned long>(c), static_cast<unsigned long>(hi - lo));
}

}  // namespace

TEST_CASE("thm1 plan: floors, doubling, coverage") {
    auto set = IndexSet::geometric_blocks(4, 1, 2, 0);
    const Rational delta(2, 3);
    auto r = synthesize_weight_thm1(set, delta, 1u << 14);
    const auto& bp = r.plan.breakpoints;
    REQUIRE(bp.size() >= 3);
    CHECK(bp.front() == 0);
    CHECK(bp.back() >= (1u << 14));
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        Rational floor = delta * (1 - Rational(1, BigInt(1) << static_cast<unsigned>(k)));
        floor.canonicalize();
        CHECK(block_density(set, bp[k], bp[k + 1]) >= floor);
        if (k >= 1) CHECK(bp[k + 1] - bp[k] >= 2 * (bp[k] - bp[k - 1]));
        CHECK(r.weight.value(bp[k]) == Rational(1, static_cast<unsigned long>(bp[k + 1] - bp[k])));
    }
    CHECK(check_plan(r.plan, {set}, 2).empty());
}

TEST_CASE("thm1 refuses a density the set does not have") {
    CHECK_THROWS_AS(synthesize_weight_thm1(IndexSet::geometric_blocks(4, 1, 2, 0), Rational(1), 1u << 12),
                    HorizonExhausted);
}

TEST_CASE("thm1 lower bound formula") {
    CHECK(thm1_lower_bound(Rational(1), 1) == 0);
    // k = 3: ((2) - (1/2 + 1/4)) / 4 = 5/16
    CHECK(thm1_lower_bound(Rational(1), 3) == Rational(5, 16));
}

TEST_CASE("multi synthesis on evens and odds") {
    std::vector<IndexSet> sets{IndexSet::evens(), IndexSet::odds()};
    std::vector<Rational> ds{Rational(1, 2), Rational(1, 2)};
    auto part = PartitionWithBoundedGaps::residues(2);
    CHECK(part.check(1000).empty());
    auto r = synthesize_weight_multi(sets, ds, part, 1u << 14);
    CHECK(r.selection_order == "greedy-by-l");
    CHECK(check_plan(r.plan, sets, 2).empty());
    CHECK(multi_bound_holds(r, sets, ds, part, r.weight));
    CHECK_THROWS_AS(synthesize_weight_multi(sets, {Rational(0), Rational(1, 2)}, part, 100), InvalidArgument);
}

TEST_CASE("alpha sequence is minimal and satisfies the inequality") {
    auto w = WeightSeq::harmonic();
    auto a = alpha_sequence(w, 40);
    for (std::uint64_t n = 1; n <= 40; ++n) {
        // oracle: direct sums of 1/(k+1)
        auto ratio = [&](std::uint64_t al) -> Rational {
            Rational num(0), den(0);
            for (std::uint64_t k = 0; k <= (1 + al) * n; ++k) {
                Rational v(1, static_cast<unsigned long>(k + 1));
                den += v;
                if (k >= n && k < (1 + al) * n) num += v;
            }
            return num / den;
        };
        CHECK(ratio(a.at(n)) >= Rational(1, 2));
        if (a.at(n) > 1 && (n == 1 || a.at(n) - 1 >= a.at(n - 1))) CHECK(ratio(a.at(n) - 1) < Rational(1, 2));
        if (n > 1) CHECK(a.at(n) >= a.at(n - 1));
    }
    CHECK_THROWS_AS(alpha_sequence(w, 40, 3), ScanExhausted);
}

TEST_CASE("constant weight needs alpha = 2") {
    auto a = alpha_sequence(WeightSeq::block_constant({0, 1024}), 60);
    for (auto v : a.values) CHECK(v == 2);
}
