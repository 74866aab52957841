#include <algorithm>

#include "hypodense/schedule.hpp"

namespace hypodense {

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

// Least multiple of m that is >= lower (m > 0).
BigInt least_multiple_at_least(const BigInt& m, const BigInt& lower) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), lower.get_mpz_t(), m.get_mpz_t());
    if (q < 1) q = 1;
    return q * m;
}

}  // namespace

BigInt gamma_exponent(std::uint64_t k, const BigInt& delta_prev, std::uint64_t n_k, const BigInt& tau_k) {
    return big(k) * delta_prev + 2 * big(n_k) + 1 - tau_k;
}

std::uint64_t Schedule::k_of_block(std::uint64_t block) const {
    if (block == 0) return 0;
    // n_1 = 1 and n is strictly increasing from there.
    auto it = std::upper_bound(n.begin() + 1, n.end(), block);
    return static_cast<std::uint64_t>(it - n.begin()) - 1;
}

Schedule build_schedule(ScheduleMode mode, const PsiMap& psi, std::uint64_t k_max, const ScheduleSeeds& seeds) {
    if (k_max == 0) throw InvalidArgument("k_max must be >= 1");
    if (seeds.delta0 < 1 || seeds.tau0 < 1 || seeds.Delta0 < 1) throw InvalidArgument("seeds must be positive");
    if (seeds.Delta_scale == 0) throw InvalidArgument("Delta_scale must be positive");
    if (psi.horizon() < k_max)
        throw Infeasible("psi table has " + std::to_string(psi.horizon()) + " entries, k_max = " + std::to_string(k_max));
    if (auto err = psi.validate(); !err.empty()) throw Infeasible("psi violates its constraints: " + err);

    Schedule s;
    s.mode = mode;
    s.psi = psi;
    s.seeds = seeds;
    s.k_max = k_max;
    const std::uint64_t d_max = std::max(k_max, psi.max_psi2(k_max));
    const std::uint64_t n_top = std::max(k_max + 1, d_max);
    if (psi.horizon() + 1 < n_top)
        throw Infeasible("psi table too short to define n_k up to k = " + std::to_string(n_top));

    s.n.assign(n_top + 1, 0);
    s.n[1] = 1;
    for (std::uint64_t k = 1; k < n_top; ++k) s.n[k + 1] = s.n[k] + psi.psi1(k);

    s.delta.assign(d_max + 1, BigInt(0));
    s.tau.assign(d_max + 1, BigInt(0));
    s.gamma_exp.assign(d_max + 1, BigInt(0));
    s.delta[0] = seeds.delta0;
    s.tau[0] = seeds.tau0;

    if (mode == ScheduleMode::structural) {
        for (std::uint64_t k = 1; k <= d_max; ++k) {
            s.delta[k] = s.delta[k - 1] + 1;
            s.tau[k] = s.tau[k - 1] + 1;
        }
    } else {
        // τ^{(k)} first (γ condition), then δ^{(k)} (gap and ratio conditions).
        BigInt min_prev_E;
        for (std::uint64_t k = 1; k <= d_max; ++k) {
            BigInt bound = -16 * big(k);
            if (k >= 2 && 2 * min_prev_E < bound) bound = 2 * min_prev_E;
            // E_k <= bound  <=>  τ >= kδ^{(k-1)} + 2n_k + 1 - bound
            BigInt tau = big(k) * s.delta[k - 1] + 2 * big(s.n[k]) + 1 - bound;
            if (tau <= s.tau[k - 1]) tau = s.tau[k - 1] + 1;
            s.tau[k] = tau;

            BigInt d = s.delta[k - 1] + 1;
            d = std::max(d, BigInt(tau + big(k)));
            d = std::max(d, BigInt(big(k - 1) * s.delta[k - 1] * big(k)));
            s.delta[k] = d;

            BigInt e = gamma_exponent(k, s.delta[k - 1], s.n[k], s.tau[k]);
            if (k == 1 || e < min_prev_E) min_prev_E = e;
        }
    }
    for (std::uint64_t k = 1; k <= d_max; ++k) s.gamma_exp[k] = gamma_exponent(k, s.delta[k - 1], s.n[k], s.tau[k]);

    // Δ only once δ is fixed: it references δ^{(ψ₂(k))}.
    s.Delta.assign(k_max + 1, BigInt(0));
    s.Delta[0] = seeds.Delta0;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        const BigInt& dpsi = s.delta[psi.psi2(k)];
        BigInt lower = (big(k) + 3) * dpsi + 4 * big(s.n[k + 1]) + 3;
        if (mode == ScheduleMode::structural) {
            lower *= big(seeds.Delta_scale);
        } else {
            BigInt ratio = big(k) * (big(k) * dpsi + big(s.n[k + 1]));
            if (ratio > lower) lower = ratio;
        }
        s.Delta[k] = least_multiple_at_least(2 * s.Delta[k - 1], lower);
    }
    return s;
}

namespace {

ScheduleCheck make_check(std::string name) { return ScheduleCheck{std::move(name), true, 0}; }

void fail(ScheduleCheck& c, std::uint64_t k) {
    if (c.holds) {
        c.holds = false;
        c.first_failure = k;
    }
}

}  // namespace

std::vector<ScheduleCheck> check_structural(const Schedule& s) {
    auto incr = make_check("delta and tau increasing positive integers");
    auto mult = make_check("Delta(k) multiple of 2*Delta(k-1)");
    auto size = make_check("Delta(k) > (k+3)*delta(psi2(k)) + 4*n(k+1) + 2");
    auto psi = make_check("psi constraints");
    if (!s.psi.validate().empty()) fail(psi, 0);
    for (std::uint64_t k = 0; k <= s.d_max(); ++k) {
        if (s.delta[k] < 1 || s.tau[k] < 1) fail(incr, k);
        if (k > 0 && (s.delta[k] <= s.delta[k - 1] || s.tau[k] <= s.tau[k - 1])) fail(incr, k);
    }
    for (std::uint64_t k = 1; k <= s.k_max; ++k) {
        BigInt twice = 2 * s.Delta[k - 1];
        if (s.Delta[k] % twice != 0) fail(mult, k);
        BigInt bound = (big(k) + 3) * s.delta[s.psi.psi2(k)] + 4 * big(s.n[k + 1]) + 2;
        if (!(s.Delta[k] > bound)) fail(size, k);
    }
    return {psi, incr, mult, size};
}

std::vector<ScheduleCheck> check_asymptotic(const Schedule& s) {
    auto gamma = make_check("gamma(k) <= min(2^-16k, min_{s<k} gamma(s)^2)");
    auto gap = make_check("delta(k) - tau(k) >= k");
    auto dratio = make_check("(k-1)*delta(k-1)*k <= delta(k)");
    auto Dratio = make_check("(k*delta(psi2(k)) + n(k+1))*k <= Delta(k)");
    for (std::uint64_t k = 1; k <= s.d_max(); ++k) {
        Pow2 g = s.gamma(k);
        if (!pow2_leq(g, Pow2(BigInt(-16 * big(k))))) fail(gamma, k);
        for (std::uint64_t j = 1; j < k; ++j)
            if (!pow2_leq(g, s.gamma(j).squared())) fail(gamma, k);
        if (s.delta[k] - s.tau[k] < big(k)) fail(gap, k);
        if (big(k - 1) * s.delta[k - 1] * big(k) > s.delta[k]) fail(dratio, k);
    }
    for (std::uint64_t k = 1; k <= s.k_max; ++k) {
        BigInt lhs = (big(k) * s.delta[s.psi.psi2(k)] + big(s.n[k + 1])) * big(k);
        if (lhs > s.Delta[k]) fail(Dratio, k);
    }
    return {gamma, gap, dratio, Dratio};
}

}  // namespace hypodense
