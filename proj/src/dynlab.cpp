#include "hypodense/dynlab.hpp"

#include <algorithm>

#include "hypodense/errors.hpp"

namespace hypodense {

namespace {

// 1/d for d = ±2^e; every weight product of a C-type operator has this form.
Dyadic inverse_pow2(const Dyadic& d) {
    if (abs(d.mantissa()) != 1) throw InvalidArgument("not a signed power of two: " + d.to_string());
    return Dyadic(BigInt(d.mantissa()), -d.exponent());
}

Rational rat(const Dyadic& d) { return d.to_rational(); }

Dyadic max_of(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

std::uint64_t to_u64_or(const BigInt& z, std::uint64_t fallback) {
    if (sgn(z) < 0 || !z.fits_ulong_p()) return fallback;
    return z.get_ui();
}

}  // namespace

ShadowingCertificate build_shadowing_vector(const CTypeParams& params, const SparseVec& x, const Rational& epsilon,
                                            const AlphaSequence& alpha) {
    if (sgn(epsilon) <= 0) throw InvalidArgument("epsilon must be positive");
    const Schedule& s = params.schedule();

    ShadowingCertificate c;
    c.x = x;
    c.epsilon = epsilon;

    // smallest k0 with supp(x) below b_{n_{k0}}
    std::uint64_t k0 = 1;
    while (true) {
        if (k0 >= s.n.size() || s.n[k0] > params.n_max())
            throw SupportOutOfRange("support of x exceeds every realized n_k block boundary");
        if (x.empty() || x.max_index() < params.b(s.n[k0])) break;
        ++k0;
    }
    c.k0 = k0;
    const std::uint64_t L = s.n[k0];
    const std::uint64_t B = params.b(L);

    // ‖x‖ (sup|w|)^B / (inf|w|)^B; divided by 2^{δ-τ} below
    const Rational base = rat(x.l1_norm()) * rat(dyadic_pow(params.sup_abs_w(), B)) /
                          rat(dyadic_pow(params.inf_abs_w(), B));

    bool some_K = false, found = false;
    std::string why;
    for (std::uint64_t K = 1; K <= s.d_max() && !found; ++K) {
        const std::uint64_t dK = to_u64_or(s.delta[K], 0);
        if (dK == 0 || dK <= B) continue;
        const BigInt gap = s.delta[K] - s.tau[K];
        Rational bound = base;
        if (gap >= 0) {
            bound /= Pow2(gap).materialize().to_rational();
        } else {
            bound *= Pow2(BigInt(-gap)).materialize().to_rational();
        }
        if (!(bound < epsilon)) continue;
        const std::uint64_t n = 2 * dK;
        if (n > alpha.values.size()) {
            why = "alpha sequence shorter than 2*delta(" + std::to_string(K) + ")";
            continue;
        }
        some_K = true;
        const std::uint64_t a = alpha.at(n);
        for (std::uint64_t k = std::max<std::uint64_t>(2 * a + 1, 1); k <= s.k_max; ++k) {
            if (s.psi.psi1(k) != L || s.psi.psi2(k) != K) continue;
            if (s.n[k + 1] - 1 > params.n_max()) break;
            c.K = K;
            c.k = k;
            c.n = n;
            c.window = a * n;
            found = true;
            break;
        }
        if (!found) why = "no k with psi(k) = (" + std::to_string(L) + ", " + std::to_string(K) + "), k >= 2*alpha+1, realized";
    }
    if (!found && !some_K) throw NoFeasibleK("no K with delta(K) > b_{n_k0} = " + std::to_string(B) + " meeting the epsilon bound" +
                                   (why.empty() ? "" : " (" + why + ")"));
    if (!found) throw NoFeasibleFiber(why);

    const std::uint64_t K = c.K, k = c.k, d = to_u64_or(s.delta[K], 0);
    const std::uint64_t nk = s.n[k];
    const BigInt gap = s.delta[K] - s.tau[K];
    c.eq9_target = Pow2(gap);

    // z per block l < n_{k0}, coordinate j = b_l + t
    for (const auto& [j, xj] : x.entries()) {
        const std::uint64_t l = params.block_of(j);
        const std::uint64_t t = j - params.b(l);
        const std::uint64_t end = params.b(nk + l + 1);  // b_{n_k+l+1}
        const std::uint64_t p = end - 2 * d + t;
        Dyadic head = params.v(nk + l) * params.weight_product(p + 1, end - 1);
        Dyadic tail = params.weight_product(params.b(l) + 1, j);
        c.z.add(p, xj * inverse_pow2(head) * inverse_pow2(tail));
    }
    c.norm_z = c.z.l1_norm();
    c.norm_ok = compare(c.norm_z, epsilon) < 0;

    const Dyadic target = Dyadic::pow2(to_int64(gap));
    c.eq9_holds = true;
    c.eq10_holds = true;
    for (std::uint64_t n = nk; n < s.n[k + 1]; ++n) {
        const std::uint64_t end = params.b(n + 1);
        Dyadic e9 = params.v(n).abs() * params.weight_product(end - 2 * d, end - 1).abs();
        c.eq9_values.push_back(e9);
        if (!(e9 == target)) c.eq9_holds = false;
        // |v| Π_{i=b_n+m+1}^{b_{n+1}-1} |w_i|, peeled one weight per step
        Dyadic rest = params.v(n).abs() * params.block_product(n).abs();
        for (std::uint64_t m = 0; m <= c.window; ++m) {
            if (m > 0) rest = rest * inverse_pow2(params.w(params.b(n) + m).abs());
            if (rest < target) c.eq10_holds = false;
        }
    }

    SparseVec y = params.apply_power(c.z, c.n), xm = x;
    c.max_orbit_error = Dyadic(0);
    for (std::uint64_t m = 0; m <= c.window; ++m) {
        c.max_orbit_error = max_of(c.max_orbit_error, (y - xm).l1_norm());
        if (m == c.window) break;
        y = params.apply(y);
        xm = params.apply(xm);
    }
    c.orbit_ok = compare(c.max_orbit_error, epsilon) < 0;
    return c;
}

std::vector<Dyadic> prop50_hypothesis(const CTypeParams& params, std::uint64_t l) {
    if (l > params.n_max()) throw SupportOutOfRange("block " + std::to_string(l) + " not realized");
    std::vector<Dyadic> out;
    for (std::uint64_t m = 1; m <= l; ++m) {
        const std::uint64_t f = params.phi(m);
        // prefix products are monotone inside a run, so the sup sits on a run end
        Dyadic p(1), best(1);
        for (const auto& r : params.data().w[f]) {
            p *= dyadic_pow(r.value.abs(), r.end - r.begin);
            best = max_of(best, p);
        }
        out.push_back(params.v(m).abs() * best);
    }
    return out;
}

Prop50Result prop50_check(const CTypeParams& params, const SparseVec& x, std::uint64_t l, std::uint64_t n,
                          const std::vector<Rational>& C, std::uint64_t j_max) {
    if (l == 0 || n >= l) throw InvalidArgument("need 0 <= n < l");
    if (C.size() <= l) throw InvalidArgument("C must list C_0..C_l");
    const auto hyp = prop50_hypothesis(params, l);
    for (std::uint64_t m = 1; m <= l; ++m) {
        if (sgn(C[m]) <= 0 || C[m] >= 1) throw HypothesisViolated(m, "C_" + std::to_string(m) + " not in (0,1)");
        if (compare(hyp[m - 1], C[m]) > 0)
            throw HypothesisViolated(m, "|v_m| sup prod = " + hyp[m - 1].to_string() + " exceeds C_" +
                                            std::to_string(m) + " = " + to_string(C[m]));
    }

    Prop50Result r;
    const SparseVec Pl = params.project_block(x, l);
    const Rational rhs1 = C[l] * rat(params.block_functional(x, l));
    const Rational norm_Pl = rat(Pl.l1_norm());
    const std::uint64_t len = params.block_length(l), last = params.b(l + 1) - 1;
    const std::uint64_t N_top = std::min(len, j_max);

    SparseVec y = Pl;
    Dyadic run_max(0), tail_sup(1), tail_prod(1);
    for (std::uint64_t j = 0; j <= j_max; ++j) {
        const Dyadic lhs = params.project_block(y, n).l1_norm();
        if (rat(lhs) > rhs1 && r.conclusion1) {
            r.conclusion1 = false;
            r.failing_j = j;
        }
        run_max = max_of(run_max, lhs);
        // conclusion (2) at N = j: sup over j' <= N, k in [b_{l+1}-N, b_{l+1})
        if (j >= 1 && j <= N_top) {
            if (j >= 2) {
                tail_prod *= params.w(last - j + 2).abs();
                tail_sup = max_of(tail_sup, tail_prod);
            }
            if (rat(run_max) > C[l] * rat(tail_sup) * norm_Pl && r.conclusion2) {
                r.conclusion2 = false;
                if (r.conclusion1) r.failing_j = j;
            }
        }
        if (j < j_max) y = params.apply(y);
    }
    return r;
}

Rational prop51_bound(std::uint64_t block_length, std::uint64_t K0, std::uint64_t K1, std::uint64_t J) {
    if (!(K0 < K1 && K1 <= block_length)) throw InvalidArgument("need 0 <= K0 < K1 <= block length");
    const Rational L = make_rational(static_cast<std::int64_t>(block_length));
    const Rational flat = make_rational(static_cast<std::int64_t>(K1 - K0));
    Rational r = 1 - 2 * (L - flat) * (Rational(1, 1) / Rational(mpz_class(static_cast<unsigned long>(J)) + 1) + 1 / L);
    r.canonicalize();
    return r;
}

Prop51Result prop51_check(const CTypeParams& params, const SparseVec& x, std::uint64_t l, std::uint64_t K0,
                          std::uint64_t K1, std::uint64_t J) {
    const std::uint64_t len = params.block_length(l), bl = params.b(l);
    Prop51Result r;
    r.K0 = K0;
    r.K1 = K1;
    r.J = J;
    r.bound = prop51_bound(len, K0, K1, J);
    for (std::uint64_t k = K0 + 1; k < K1; ++k)
        if (!(params.w(bl + k).abs() == Dyadic(1)))
            throw InvalidArgument("|w| != 1 at offset " + std::to_string(k) + " of block " + std::to_string(l));
    r.alpha = params.weight_product(bl + K0 + 1, bl + len - 1).abs();

    const SparseVec Pl = params.project_block(x, l);
    const Rational threshold = rat(inverse_pow2(r.alpha)) * rat(params.block_functional(x, l)) / 2;
    SparseVec y = Pl;
    for (std::uint64_t j = 0; j <= J; ++j) {
        if (rat(params.project_block(y, l).l1_norm()) >= threshold) ++r.hits;
        if (j < J) y = params.apply(y);
    }
    r.frequency = Rational(mpz_class(static_cast<unsigned long>(r.hits)), mpz_class(static_cast<unsigned long>(J + 1)));
    r.frequency.canonicalize();
    r.holds = r.frequency >= r.bound;
    return r;
}

Prop51Result prop51_check(const CTypeParams& params, const SparseVec& x, std::uint64_t l, std::uint64_t J) {
    if (l == 0) throw InvalidArgument("block 0 carries no weight table");
    const Schedule& s = params.schedule();
    const std::uint64_t k = s.k_of_block(l);
    const std::uint64_t d = to_u64_or(s.delta.at(s.psi.psi2(k)), 0);
    const std::uint64_t len = params.block_length(l);
    return prop51_check(params, x, l, k * d + 2 * l + 1, len - 3 * d - 2 * l - 1, J);
}

HittingReport hitting_density(const CTypeParams& params, const SparseVec& x, const Ball& ball,
                              std::uint64_t step_horizon, const WeightSeq& weight, const EstimateOptions& options) {
    if (sgn(ball.radius) <= 0) throw InvalidArgument("radius must be positive");
    HittingReport h;
    h.x = x;
    h.ball = ball;
    h.step_horizon = step_horizon;
    SparseVec y = x;
    for (std::uint64_t m = 0; m <= step_horizon; ++m) {
        if (compare((y - ball.center).l1_norm(), ball.radius) < 0) h.visits.push_back(m);
        if (m < step_horizon) y = params.apply(y);
    }
    SparseVec c = params.apply(ball.center);
    for (std::uint64_t p = 1; p <= step_horizon; ++p) {
        if (c == ball.center) {
            h.center_period = p;
            break;
        }
        c = params.apply(c);
    }
    h.density = estimate_densities(IndexSet::explicit_set(h.visits), weight, step_horizon + 1, options);
    return h;
}

IdentityReport set_identity_check(const CTypeParams& params, const std::vector<SparseVec>& vectors,
                                  const std::vector<WeightSeq>& weights, const std::vector<Ball>& balls,
                                  std::uint64_t step_horizon, const Rational& tol) {
    IdentityReport rep;
    rep.scope_note =
        "finite families at a finite horizon; the identities over the whole weight family are not decided here";
    const WeightSeq unit = WeightSeq::unit();
    for (std::size_t vi = 0; vi < vectors.size(); ++vi) {
        for (std::size_t bi = 0; bi < balls.size(); ++bi) {
            auto base = hitting_density(params, vectors[vi], balls[bi], step_horizon, unit);
            const IndexSet visits = IndexSet::explicit_set(base.visits);
            for (std::size_t wi = 0; wi < weights.size(); ++wi) {
                IdentityRow row;
                row.vector = vi;
                row.ball = bi;
                row.weight = wi;
                row.weight_name = weights[wi].describe();
                row.certified = weights[wi].family_certificate().in_family();
                row.lower_unit = base.density.lower_estimate;
                row.upper_unit = base.density.upper_estimate;
                auto wd = estimate_densities(visits, weights[wi], step_horizon + 1);
                row.lower_a = wd.lower_estimate;
                row.upper_a = wd.upper_estimate;
                row.chain_holds = row.lower_unit <= row.lower_a + tol && row.lower_a <= row.upper_a &&
                                  row.upper_a <= row.upper_unit + tol;
                if (row.certified && !row.chain_holds) rep.all_hold = false;
                rep.rows.push_back(std::move(row));
            }
        }
    }
    return rep;
}

}  // namespace hypodense
