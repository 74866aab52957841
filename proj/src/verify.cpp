#include "hypodense/verify.hpp"

#include <algorithm>
#include <functional>

#include "hypodense/densities.hpp"
#include "hypodense/dynlab.hpp"
#include "hypodense/index_set.hpp"
#include "hypodense/serialize.hpp"

namespace hypodense {

namespace toys {

Schedule structural_schedule() {
    return build_schedule(ScheduleMode::structural, PsiMap::build(2, 3, 1, 20), 4, ScheduleSeeds{});
}

CTypeParams structural_params() {
    auto s = structural_schedule();
    return CTypeParams::realize(s, s.block_count() - 1);
}

Schedule shadow_schedule() {
    ScheduleSeeds seeds;
    seeds.delta0 = 12;
    seeds.tau0 = 1;
    seeds.Delta0 = 2;
    return build_schedule(ScheduleMode::structural, PsiMap::build(1, 2, 1, 20), 5, seeds);
}

CTypeParams shadow_params() {
    auto s = shadow_schedule();
    return CTypeParams::realize(s, s.block_count() - 1);
}

WeightSeq shadow_weight() { return WeightSeq::block_constant({0, 1024}); }

Schedule prop_schedule() {
    ScheduleSeeds seeds;
    seeds.delta0 = 1;
    seeds.tau0 = 60;
    seeds.Delta0 = 2;
    seeds.Delta_scale = 8;
    return build_schedule(ScheduleMode::structural, PsiMap::build(2, 3, 1, 20), 4, seeds);
}

CTypeParams prop_params() {
    auto s = prop_schedule();
    return CTypeParams::realize(s, s.block_count() - 1);
}

Schedule asymptotic_schedule() {
    return build_schedule(ScheduleMode::asymptotic, PsiMap::build(2, 4, 1, 40), 10, ScheduleSeeds{});
}

}  // namespace toys

SparseVec random_sparse(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi, std::size_t terms) {
    std::uniform_int_distribution<std::uint64_t> idx(lo, hi - 1);
    std::uniform_int_distribution<int> mant(1, 8), sign(0, 1), expo(-3, 3);
    SparseVec x;
    for (std::size_t t = 0; t < terms; ++t) {
        const int m = mant(rng) * (sign(rng) ? 1 : -1);
        x.add(idx(rng), Dyadic(BigInt(m), expo(rng)));
    }
    return x;
}

bool VerifyReport::all_passed() const {
    for (const auto& l : lines)
        if (!l.passed) return false;
    return true;
}

void VerifyReport::write(std::ostream& out) const {
    std::size_t failed = 0;
    for (const auto& l : lines) {
        out << (l.passed ? "PASS " : "FAIL ") << l.suite << '.' << l.check;
        if (!l.detail.empty()) out << "  " << l.detail;
        out << '\n';
        failed += !l.passed;
    }
    out << (failed == 0 ? "OK" : "FAILED") << ' ' << lines.size() - failed << '/' << lines.size() << '\n';
}

namespace {

using Rng = std::mt19937_64;

struct Ctx {
    const VerifyOptions& opt;
    Rng& rng;
    VerifyReport& rep;
    std::string suite;

    void add(const std::string& check, bool ok, const std::string& detail = {}) {
        rep.lines.push_back({suite, check, ok, detail});
    }
    // Runs f; library errors count as failures with the message as detail.
    void guarded(const std::string& check, const std::function<std::pair<bool, std::string>()>& f) {
        try {
            auto [ok, d] = f();
            add(check, ok, d);
        } catch (const Error& e) {
            add(check, false, std::string("error: ") + e.what());
        }
    }
};

Dyadic random_dyadic(Rng& rng) {
    std::uniform_int_distribution<long> m(-1000, 1000);
    std::uniform_int_distribution<int> e(-40, 40);
    return Dyadic(BigInt(m(rng)), e(rng));
}

IndexSet random_set(Rng& rng) {
    std::uniform_int_distribution<int> kind(0, 3);
    switch (kind(rng)) {
        case 0: {
            std::uniform_int_distribution<std::uint64_t> mod(1, 12);
            std::uint64_t m = mod(rng);
            std::vector<std::uint64_t> r;
            for (std::uint64_t i = 0; i < m; ++i)
                if (rng() & 1) r.push_back(i);
            return IndexSet::periodic(r, m);
        }
        case 1: {
            std::uniform_int_distribution<std::uint64_t> base(2, 5);
            std::uint64_t b = base(rng);
            return IndexSet::geometric_blocks(b, 1, 2, 0);
        }
        case 2: {
            std::vector<std::uint64_t> e;
            std::uint64_t at = 0;
            std::uniform_int_distribution<std::uint64_t> step(1, 40);
            for (int i = 0; i < 60; ++i) e.push_back(at += step(rng));
            return IndexSet::explicit_set(e);
        }
        default:
            return IndexSet::complement_of(IndexSet::geometric_blocks(4, 1, 2, 0));
    }
}

WeightSeq random_weight(Rng& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
        case 0: return WeightSeq::unit();
        case 1: return WeightSeq::harmonic();
        default: {
            std::uniform_int_distribution<std::uint64_t> first(1, 30);
            return WeightSeq::block_constant({0, first(rng)});
        }
    }
}

// only weights that tend to zero with divergent sum
WeightSeq random_family_weight(Rng& rng) {
    std::uniform_int_distribution<std::uint64_t> first(0, 30);
    const std::uint64_t f = first(rng);
    return f == 0 ? WeightSeq::harmonic() : WeightSeq::block_constant({0, f});
}

void suite_exactnum(Ctx& c) {
    bool ring = true, round = true, order = true;
    for (std::uint64_t t = 0; t < c.opt.trials * 4; ++t) {
        Dyadic x = random_dyadic(c.rng), y = random_dyadic(c.rng);
        Rational qx = x.to_rational(), qy = y.to_rational();
        if ((x + y).to_rational() != qx + qy || (x * y).to_rational() != qx * qy || (x - y).to_rational() != qx - qy)
            ring = false;
        if (!(Dyadic::parse(x.to_string()) == x) || !(Dyadic::from_rational(qx) == x)) round = false;
        if (((x < y) != (qx < qy)) || (compare(x, qy) != (qx < qy ? -1 : qx > qy ? 1 : 0))) order = false;
    }
    c.add("dyadic_ring_ops_match_rationals", ring);
    c.add("dyadic_roundtrip", round);
    c.add("dyadic_order_matches_rationals", order);

    bool pw = true;
    for (std::uint64_t t = 0; t < c.opt.trials; ++t) {
        std::uniform_int_distribution<long> e(-200, 200);
        Pow2 a(BigInt(e(c.rng))), b(BigInt(e(c.rng)));
        if ((a <= b) != (a.materialize() <= b.materialize())) pw = false;
        if (!((a * b).materialize() == a.materialize() * b.materialize())) pw = false;
    }
    c.add("pow2_exponent_space_matches_materialized", pw);
    bool threw = false;
    try {
        Pow2(BigInt(exponent_cap()) + 1).materialize();
    } catch (const ExponentOverflow&) {
        threw = true;
    }
    c.add("pow2_cap_enforced", threw);
}

void suite_densities(Ctx& c) {
    std::uniform_int_distribution<std::uint64_t> hor(1, 2000);
    std::size_t bad = 0;
    for (std::uint64_t t = 0; t < c.opt.trials; ++t) {
        auto set = random_set(c.rng);
        auto w = random_weight(c.rng);
        if (!duality_check(set, w, hor(c.rng))) ++bad;
    }
    c.add("duality_exact", bad == 0, std::to_string(bad) + " failures");

    c.guarded("monotonicity_chain_harmonic", [&] {
        auto est = monotonicity_check(IndexSet::geometric_blocks(4, 1, 2, 0), WeightSeq::harmonic(),
                                      WeightSeq::unit(), 1u << 16);
        return std::pair{est.chain_holds(make_rational(1, 20)), std::string("lower_a~") + display(est.lower_a)};
    });

    std::size_t gap_bad = 0;
    for (std::uint64_t t = 0; t < c.opt.trials; ++t) {
        auto set = random_set(c.rng);
        std::uniform_int_distribution<std::uint64_t> n(1, 500);
        auto g = shift_quotient_gap(set, WeightSeq::harmonic(), make_rational(1, 2), n(c.rng));
        if (g.gap < 0) ++gap_bad;
    }
    c.add("shift_gap_nonnegative", gap_bad == 0, std::to_string(gap_bad) + " failures");
}

void suite_weightforge(Ctx& c) {
    const auto set = IndexSet::geometric_blocks(4, 1, 2, 0);
    const Rational delta = make_rational(2, 3);
    c.guarded("thm1_plan_certificates", [&] {
        auto r = synthesize_weight_thm1(set, delta, 1u << 16);
        auto err = check_plan(r.plan, {set}, 2);
        auto cps = geometric_checkpoints(1u << 16, make_rational(5, 4));
        bool ok = err.empty() && thm1_bound_holds(r.plan, set, r.weight, delta, cps);
        return std::pair{ok, err};
    });
    c.guarded("multi_evens_odds", [&] {
        std::vector<IndexSet> sets{IndexSet::evens(), IndexSet::odds()};
        std::vector<Rational> ds{make_rational(1, 2), make_rational(1, 2)};
        auto part = PartitionWithBoundedGaps::residues(2);
        auto r = synthesize_weight_multi(sets, ds, part, 1u << 14);
        bool ok = check_plan(r.plan, sets, 2).empty() && multi_bound_holds(r, sets, ds, part, r.weight);
        return std::pair{ok, std::string()};
    });
    c.guarded("alpha_sequence_minimal", [&] {
        bool ok = true;
        for (const auto& w : {WeightSeq::harmonic(), WeightSeq::block_constant({0, 7}), random_family_weight(c.rng)}) {
            auto a = alpha_sequence(w, 60);
            for (std::uint64_t n = 1; n <= 60; ++n) {
                std::uint64_t v = a.at(n);
                if (!eq_holds(w, n, v)) ok = false;
                if (n > 1 && v < a.at(n - 1)) ok = false;
                bool can_drop = v > 1 && (n == 1 || v - 1 >= a.at(n - 1)) && eq_holds(w, n, v - 1);
                if (can_drop) ok = false;
            }
        }
        return std::pair{ok, std::string()};
    });
}

void suite_ctype(Ctx& c) {
    if (c.opt.mode == ScheduleMode::asymptotic) {
        c.guarded("asymptotic_conditions", [&] {
            auto s = toys::asymptotic_schedule();
            std::string failed;
            for (const auto& ch : check_asymptotic(s))
                if (!ch.holds) failed += ch.name + "@" + std::to_string(ch.first_failure) + " ";
            return std::pair{failed.empty(), failed};
        });
        return;
    }
    c.guarded("structural_conditions", [&] {
        auto s = toys::structural_schedule();
        std::string failed;
        for (const auto& ch : check_structural(s))
            if (!ch.holds) failed += ch.name + " ";
        return std::pair{failed.empty(), failed};
    });
    c.guarded("periodicity_sampled", [&] {
        auto p = toys::structural_params();
        std::uniform_int_distribution<std::uint64_t> j(0, p.support_end() - 1);
        for (std::uint64_t t = 0; t < c.opt.trials; ++t) {
            std::uint64_t idx = j(c.rng);
            auto e = SparseVec::basis(idx);
            if (!(p.apply_power(e, 2 * p.block_length(p.block_of(idx))) == e))
                return std::pair{false, "j=" + std::to_string(idx)};
        }
        return std::pair{true, std::string()};
    });
    c.guarded("block_product_identity", [&] {
        auto p = toys::structural_params();
        const auto& s = p.schedule();
        for (std::uint64_t n = 1; n <= p.n_max(); ++n) {
            std::uint64_t k = s.k_of_block(n);
            BigInt e = BigInt(static_cast<unsigned long>(k)) * s.delta[s.psi.psi2(k)];
            if (!(p.block_product(n) == Dyadic::pow2(to_int64(e)))) return std::pair{false, "n=" + std::to_string(n)};
        }
        return std::pair{true, std::string()};
    });
    c.guarded("linearity", [&] {
        auto p = toys::structural_params();
        for (std::uint64_t t = 0; t < c.opt.trials; ++t) {
            auto x = random_sparse(c.rng, 0, p.support_end(), 4), y = random_sparse(c.rng, 0, p.support_end(), 4);
            if (!(p.apply(x + y) == p.apply(x) + p.apply(y))) return std::pair{false, std::string()};
        }
        return std::pair{true, std::string()};
    });
}

void suite_dynlab(Ctx& c) {
    c.guarded("shadowing_e0", [&] {
        auto p = toys::shadow_params();
        auto alpha = alpha_sequence(toys::shadow_weight(), 64);
        auto cert = build_shadowing_vector(p, SparseVec::basis(0), make_rational(1, 16), alpha);
        return std::pair{cert.holds(), "K=" + std::to_string(cert.K) + " k=" + std::to_string(cert.k) +
                                           " norm_z=" + cert.norm_z.to_string() +
                                           " err=" + cert.max_orbit_error.to_string()};
    });
    c.guarded("prop50_prop51_random", [&] {
        auto p = toys::prop_params();
        std::vector<Rational> C{Rational(1, 2)};
        for (const auto& h : prop50_hypothesis(p, p.n_max())) C.push_back(h.to_rational());
        std::uniform_int_distribution<std::uint64_t> pick(1, p.n_max());
        std::size_t bad50 = 0, bad51 = 0;
        for (std::uint64_t t = 0; t < c.opt.trials; ++t) {
            std::uint64_t l = pick(c.rng);
            auto x = random_sparse(c.rng, p.b(l), p.b(l + 1), 3);
            std::uniform_int_distribution<std::uint64_t> nn(0, l - 1);
            std::vector<Rational> Cl(C.begin(), C.begin() + static_cast<std::ptrdiff_t>(l) + 1);
            if (!prop50_check(p, x, l, nn(c.rng), Cl, 2 * p.block_length(l)).holds()) ++bad50;
            if (!prop51_check(p, x, l, 2 * p.block_length(l)).holds) ++bad51;
        }
        return std::pair{bad50 == 0 && bad51 == 0,
                         "prop50 failures " + std::to_string(bad50) + ", prop51 failures " + std::to_string(bad51)};
    });
    c.guarded("hitting_periodic_center", [&] {
        auto p = toys::structural_params();
        const std::uint64_t j = p.b(2) + 3, per = 2 * p.block_length(2);
        auto e = SparseVec::basis(j);
        auto h = hitting_density(p, e, Ball{e, Rational(1, 4)}, 2 * per, WeightSeq::unit());
        bool ok = h.center_period != 0 && per % h.center_period == 0;
        for (std::uint64_t m = 0; m <= 2 * per; m += per)
            if (std::find(h.visits.begin(), h.visits.end(), m) == h.visits.end()) ok = false;
        return std::pair{ok, "period=" + std::to_string(h.center_period)};
    });
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& options) {
    static const std::vector<std::pair<std::string, void (*)(Ctx&)>> suites{{"exactnum", suite_exactnum},
                                                                            {"densities", suite_densities},
                                                                            {"weightforge", suite_weightforge},
                                                                            {"ctype", suite_ctype},
                                                                            {"dynlab", suite_dynlab}};
    bool known = options.suite == "all";
    for (const auto& s : suites) known = known || s.first == options.suite;
    if (!known) throw ConfigError("unknown suite '" + options.suite + "'");

    VerifyReport rep;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        const auto& [name, fn] = suites[i];
        if (options.suite != "all" && options.suite != name) continue;
        // one stream per suite so running a single suite reproduces its lines
        Rng rng(options.seed + 0x9E3779B97F4A7C15ull * (i + 1));
        Ctx c{options, rng, rep, name};
        fn(c);
    }
    return rep;
}

}  // namespace hypodense
