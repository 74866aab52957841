#include <doctest.h>

#include <random>

#include "hypodense/ctype.hpp"
#include "hypodense/verify.hpp"
#include "oracle.hpp"

using namespace hypodense;

TEST_CASE("psi round robin respects its constraints") {
    auto psi = PsiMap::build(2, 3, 1, 30);
    CHECK(psi.validate().empty());
    CHECK(psi.psi1(1) == 1);
    CHECK(psi.psi2(1) == 2);
    for (std::uint64_t k = 1; k <= psi.horizon(); ++k) {
        CHECK(psi.psi1(k) < std::min(k + 1, psi.psi2(k)));
        for (std::uint64_t j = 1; j < psi.psi1(k); ++j) CHECK(psi.psi2(k) > psi.psi2(j));
    }
    CHECK(psi.fiber_count(1, 2, 30) >= 5);
    auto bad = PsiMap::from_table({{1, 1}});
    CHECK_FALSE(bad.validate().empty());
}

TEST_CASE("structural schedule passes its checks") {
    auto s = toys::structural_schedule();
    for (const auto& c : check_structural(s)) CHECK_MESSAGE(c.holds, c.name);
    CHECK(s.block_count() >= 6);
    CHECK_THROWS_AS(build_schedule(ScheduleMode::structural, PsiMap::build(2, 3, 1, 2), 4, {}), Infeasible);
}

TEST_CASE("asymptotic schedule conditions, recomputed") {
    auto s = toys::asymptotic_schedule();
    for (const auto& c : check_asymptotic(s)) CHECK_MESSAGE(c.holds, c.name);
    // oracle: E_k = kδ(k-1) + 2n_k + 1 - τ(k) directly
    for (std::uint64_t k = 1; k <= s.d_max(); ++k) {
        BigInt E = BigInt(static_cast<unsigned long>(k)) * s.delta[k - 1] + 2 * s.n[k] + 1 - s.tau[k];
        CHECK(E <= -16 * static_cast<long>(k));
        CHECK(s.delta[k] - s.tau[k] >= static_cast<long>(k));
    }
}

TEST_CASE("realized operator agrees with the definition") {
    auto p = toys::structural_params();
    oracle::Op op(p.schedule(), p.n_max() + 1);
    REQUIRE(op.b.back() == p.support_end());
    for (std::uint64_t j = 0; j < p.support_end(); ++j) CHECK(p.w(j).to_rational() == op.w(j));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        auto x = random_sparse(rng, 0, p.support_end(), 5);
        CHECK(oracle::from_sparse(p.apply(x)) == op.apply(oracle::from_sparse(x)));
    }
}

TEST_CASE("block products are powers of two") {
    auto p = toys::structural_params();
    const auto& s = p.schedule();
    oracle::Op op(s, p.n_max() + 1);
    for (std::uint64_t n = 1; n <= p.n_max(); ++n) {
        const auto k = s.k_of_block(n);
        CHECK(op.inner_product(n) == oracle::pow2q(BigInt(k * s.delta[s.psi.psi2(k)]).get_si()));
    }
}

TEST_CASE("validator names the broken invariant") {
    auto p = toys::structural_params();
    auto d = p.data();
    d.v[2] = Dyadic(3);
    try {
        CTypeParams::from_data(p.schedule(), d);
        FAIL("accepted bad data");
    } catch (const ValidationError& e) {
        CHECK(e.index() == 2);
        CHECK(e.invariant().find("v_n") != std::string::npos);
    }
    d = p.data();
    d.phi[3] = 3;
    CHECK_THROWS_AS(CTypeParams::from_data(p.schedule(), d), ValidationError);
    d = p.data();
    d.w[4][0].end -= 1;
    CHECK_THROWS_AS(CTypeParams::from_data(p.schedule(), d), ValidationError);
}

TEST_CASE("weight table shape") {
    auto runs = weight_table(2, 3, 4, 100);
    REQUIRE(runs.size() == 5);
    CHECK(runs[0].begin == 1);
    CHECK(runs[0].end == 2 * 4 + 2 * 3 + 2);
    CHECK(runs.back().end == 100);
    CHECK_THROWS_AS(weight_table(2, 3, 4, 20), InvalidArgument);
}

TEST_CASE("out of range indices are reported") {
    auto p = toys::structural_params();
    CHECK_THROWS_AS(p.apply(SparseVec::basis(p.support_end())), SupportOutOfRange);
}
