#include <doctest.h>

#include <random>

#include "hypodense/dynlab.hpp"
#include "hypodense/verify.hpp"
#include "oracle.hpp"

using namespace hypodense;

TEST_CASE("shadowing vector for e_0") {
    auto p = toys::shadow_params();
    auto alpha = alpha_sequence(toys::shadow_weight(), 64);
    auto c = build_shadowing_vector(p, SparseVec::basis(0), Rational(1, 16), alpha);
    CHECK(c.K == 2);
    CHECK(c.n == 2 * p.schedule().delta[2].get_ui());
    CHECK(c.k >= 2 * alpha.at(c.n) + 1);
    CHECK(c.eq9_holds);
    CHECK(c.eq10_holds);
    CHECK(c.holds());

    // oracle: iterate both orbits from the definition
    oracle::Op op(p.schedule(), p.n_max() + 1);
    auto z = oracle::from_sparse(c.z), x = oracle::from_sparse(SparseVec::basis(0));
    for (std::uint64_t i = 0; i < c.n; ++i) z = op.apply(z);
    Rational worst(0);
    for (std::uint64_t m = 0; m <= c.window; ++m) {
        worst = std::max(worst, oracle::l1(oracle::minus(z, x)));
        z = op.apply(z);
        x = op.apply(x);
    }
    CHECK(worst == c.max_orbit_error.to_rational());
    CHECK(worst < Rational(1, 16));
}

TEST_CASE("shadowing the zero vector") {
    auto p = toys::shadow_params();
    auto c = build_shadowing_vector(p, SparseVec{}, Rational(1, 16), alpha_sequence(toys::shadow_weight(), 64));
    CHECK(c.z.empty());
    CHECK(c.max_orbit_error.is_zero());
}

TEST_CASE("shadowing reports an infeasible epsilon") {
    auto p = toys::shadow_params();
    CHECK_THROWS_AS(build_shadowing_vector(p, SparseVec::basis(0), Rational(1, BigInt(1) << 40),
                                           alpha_sequence(toys::shadow_weight(), 64)),
                    NoFeasibleK);
    // harmonic alpha_n ~ n needs k ~ 2n, far beyond k_max
    CHECK_THROWS_AS(build_shadowing_vector(p, SparseVec::basis(0), Rational(1, 16),
                                           alpha_sequence(WeightSeq::harmonic(), 64)),
                    NoFeasibleFiber);
}

TEST_CASE("prop50 on unit vectors and random vectors") {
    auto p = toys::prop_params();
    const auto l = p.n_max();
    std::vector<Rational> C{Rational(1, 2)};
    for (const auto& h : prop50_hypothesis(p, l)) {
        CHECK(h < Dyadic(1));
        C.push_back(h.to_rational());
    }
    for (std::uint64_t n = 0; n < l; ++n) CHECK(prop50_check(p, SparseVec::basis(p.b(l)), l, n, C, 2 * p.block_length(l)).holds());
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        auto x = random_sparse(rng, 0, p.support_end(), 4);
        CHECK(prop50_check(p, x, 3, t % 3, C, 2 * p.block_length(3)).holds());
    }
    // P_l x = 0: both sides vanish
    CHECK(prop50_check(p, SparseVec::basis(0), 2, 0, C, 50).holds());
}

TEST_CASE("prop50 hypothesis violation is reported") {
    auto p = toys::structural_params();
    // block 4 wraps onto an earlier weighted block: hypothesis value 4 > 1/2
    std::vector<Rational> C(p.n_max() + 1, Rational(1, 2));
    CHECK_THROWS_AS(prop50_check(p, SparseVec::basis(p.b(4)), 4, 0, C, 10), HypothesisViolated);
}

TEST_CASE("prop51 bound formula") {
    CHECK(prop51_bound(100, 10, 90, 99) == Rational(1, 5));
    CHECK(prop51_bound(100, 0, 100, 7) == 1);
    CHECK_THROWS_AS(prop51_bound(100, 50, 50, 7), InvalidArgument);
}

TEST_CASE("prop51 on a unit vector") {
    auto p = toys::prop_params();
    for (std::uint64_t l = 1; l <= p.n_max(); ++l) {
        auto r = prop51_check(p, SparseVec::basis(p.b(l)), l, 2 * p.block_length(l));
        CHECK(r.bound > 0);
        CHECK(r.alpha == Dyadic::pow2(-static_cast<std::int64_t>(2 * l + 1)));
        CHECK(r.holds);
    }
}

TEST_CASE("hitting sets") {
    auto p = toys::structural_params();
    const std::uint64_t H = 300;
    auto zero = hitting_density(p, SparseVec{}, Ball{SparseVec{}, Rational(1, 4)}, H, WeightSeq::unit());
    CHECK(zero.visits.size() == H + 1);
    CHECK(zero.density.lower_estimate == 1);

    const std::uint64_t j = p.b(3) + 1, per = 2 * p.block_length(3);
    auto e = SparseVec::basis(j);
    auto h = hitting_density(p, e, Ball{e, Rational(1, 8)}, 2 * per, WeightSeq::harmonic());
    for (std::uint64_t m = 0; m <= 2 * per; m += per) CHECK(std::count(h.visits.begin(), h.visits.end(), m) == 1);
    CHECK(h.center_period == per);

    // homogeneity: scale everything by 2^-3
    auto hs = hitting_density(p, e.scaled(Dyadic::pow2(-3)), Ball{e.scaled(Dyadic::pow2(-3)), Rational(1, 64)}, 2 * per,
                              WeightSeq::harmonic());
    CHECK(hs.visits == h.visits);

    auto big = hitting_density(p, e, Ball{SparseVec{}, Rational(BigInt(1) << 200)}, 100, WeightSeq::unit());
    CHECK(big.visits.size() == 101);
}

TEST_CASE("identity chain on certified weights") {
    auto p = toys::structural_params();
    const auto e = SparseVec::basis(p.b(2));
    const auto te = SparseVec::basis(p.b(2) + 1, Dyadic(2));  // T e: first return is late
    auto rep = set_identity_check(p, {te, SparseVec::basis(1)}, {WeightSeq::unit(), WeightSeq::harmonic()},
                                  {Ball{e, Rational(1, 2)}, Ball{SparseVec::basis(0, Dyadic(1000)), Rational(1, 2)}},
                                  400, Rational(1, 20));
    CHECK(rep.rows.size() == 8);
    CHECK(rep.all_hold);
    for (const auto& row : rep.rows)
        if (row.weight == 0) CHECK(row.lower_a == row.lower_unit);
}

TEST_CASE("identity chain: a visit at m = 0 dominates harmonic weights at short horizons") {
    // the m = 0 term carries weight 1 out of H_400 ~ 6.6; reported, not hidden
    auto p = toys::structural_params();
    const auto e = SparseVec::basis(p.b(2));
    auto rep = set_identity_check(p, {e}, {WeightSeq::harmonic()}, {Ball{e, Rational(1, 2)}}, 400, Rational(1, 20));
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].lower_a > Rational(1, 10));
    CHECK_FALSE(rep.rows[0].chain_holds);
    CHECK_FALSE(rep.all_hold);
}
