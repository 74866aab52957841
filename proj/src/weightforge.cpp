#include "hypodense/weightforge.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "hypodense/densities.hpp"

namespace hypodense {

namespace {

Rational floor_for(const Rational& delta, std::uint64_t k) {
    // (1 - 2^-k) * delta
    BigInt p2 = 1;
    p2 <<= static_cast<mp_bitcnt_t>(k);
    return Rational(delta * Rational(p2 - 1, p2));
}

struct Block {
    std::uint64_t end;
    std::uint64_t members;
};

// Smallest end e >= start + min_len with density >= floor; if e is inside a
// run of I, the block is carried to the end of that run (the density only
// grows there, and blocks then end where the prefix quotient peaks).
// Returns nullopt when nothing qualifies below limit.
std::optional<Block> find_block(const IndexSet& set, std::uint64_t start, std::uint64_t min_len,
                                const Rational& floor, std::uint64_t limit) {
    if (start + min_len > limit) return std::nullopt;
    std::uint64_t e = start + min_len;
    std::uint64_t c = set.count(start, e);
    const BigInt& fn = floor.get_num();
    const BigInt& fd = floor.get_den();
    while (true) {
        // c / (e - start) >= fn / fd
        if (BigInt(static_cast<unsigned long>(c)) * fd >= fn * BigInt(static_cast<unsigned long>(e - start))) break;
        if (e >= limit) return std::nullopt;
        if (set.contains(e)) ++c;
        ++e;
    }
    std::uint64_t run_end = e;
    while (run_end < limit && set.contains(run_end)) ++run_end;
    if (run_end < limit) {
        c += run_end - e;
        e = run_end;
    }
    return Block{e, c};
}

WeightSeq weight_from(const BlockPlan& plan) { return WeightSeq::block_constant(plan.breakpoints, 2, 0); }

std::uint64_t min_length(const BlockPlan& plan, std::uint64_t growth) {
    if (plan.blocks() == 0) return 1;
    return plan.length(plan.blocks() - 1) * growth;
}

}  // namespace

ForgeResult synthesize_weight_thm1(const IndexSet& set, const Rational& delta, std::uint64_t horizon,
                                   const ForgeOptions& options) {
    if (delta < 0 || delta > 1) throw InvalidArgument("delta must lie in [0, 1]");
    if (horizon == 0) throw InvalidArgument("horizon must be positive");
    if (options.min_growth < 2) throw InvalidArgument("block lengths must strictly grow (min_growth >= 2)");
    const std::uint64_t limit = horizon * options.scan_factor;

    ForgeResult r;
    r.plan.breakpoints = {0};
    r.plan.horizon = horizon;
    std::uint64_t k = 0;
    while (r.plan.breakpoints.back() < horizon) {
        Rational floor = floor_for(delta, k);
        std::uint64_t start = r.plan.breakpoints.back();
        auto b = find_block(set, start, min_length(r.plan, options.min_growth), floor, limit);
        if (!b)
            throw HorizonExhausted(k, "no block " + std::to_string(k) + " of density >= " + to_string(floor) +
                                          " starting at " + std::to_string(start) + " below " +
                                          std::to_string(limit) + " (delta too large or horizon too small)");
        r.plan.breakpoints.push_back(b->end);
        r.plan.floors.push_back(floor);
        r.plan.block_densities.emplace_back(make_rational(BigInt(static_cast<unsigned long>(b->members)),
                                                          BigInt(static_cast<unsigned long>(b->end - start))));
        r.plan.set_of_block.push_back(0);
        ++k;
    }
    r.weight = weight_from(r.plan);
    return r;
}

std::string check_plan(const BlockPlan& plan, const std::vector<IndexSet>& sets, std::uint64_t min_growth) {
    if (plan.breakpoints.empty() || plan.breakpoints.front() != 0) return "breakpoints must start at 0";
    if (plan.breakpoints.back() < plan.horizon) return "breakpoints do not cover the horizon";
    for (std::size_t k = 0; k < plan.blocks(); ++k) {
        if (plan.breakpoints[k + 1] <= plan.breakpoints[k]) return "breakpoints not increasing at " + std::to_string(k);
        if (k > 0 && plan.length(k) < min_growth * plan.length(k - 1))
            return "block " + std::to_string(k) + " does not grow";
        const IndexSet& s = sets.at(plan.set_of_block.at(k));
        Rational d = make_rational(BigInt(static_cast<unsigned long>(s.count(plan.breakpoints[k], plan.breakpoints[k + 1]))),
                                   BigInt(static_cast<unsigned long>(plan.length(k))));
        if (d != plan.block_densities.at(k)) return "recorded density of block " + std::to_string(k) + " is wrong";
        if (d < plan.floors.at(k)) return "block " + std::to_string(k) + " is below its floor";
    }
    return {};
}

Rational thm1_lower_bound(const Rational& delta, std::uint64_t k) {
    // Σ_{j=1}^{k-1} 2^-j = 1 - 2^{-(k-1)}
    Rational geometric(0);
    if (k >= 2) geometric = 1 - Rational(1, 1) / Rational(BigInt(1) << static_cast<mp_bitcnt_t>(k - 1));
    Rational km1 = k >= 1 ? Rational(BigInt(static_cast<unsigned long>(k - 1))) : Rational(-1);
    return Rational(delta * (km1 - geometric) / Rational(BigInt(static_cast<unsigned long>(k + 1))));
}

bool thm1_bound_holds(const BlockPlan& plan, const IndexSet& set, const WeightSeq& weight, const Rational& delta,
                      const std::vector<std::uint64_t>& checkpoints) {
    std::vector<std::uint64_t> pts;
    for (auto n : checkpoints)
        if (n > plan.breakpoints[1] && n <= plan.breakpoints.back()) pts.push_back(n);
    if (pts.empty()) return true;
    auto q = quotients_at(set, weight, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        // k with n_k < N <= n_{k+1}
        auto it = std::lower_bound(plan.breakpoints.begin(), plan.breakpoints.end(), pts[i]);
        std::uint64_t k = static_cast<std::uint64_t>(it - plan.breakpoints.begin()) - 1;
        if (q[i] < thm1_lower_bound(delta, k)) return false;
    }
    return true;
}

std::size_t PartitionWithBoundedGaps::part_of(std::uint64_t l) const {
    for (std::size_t p = 0; p < parts.size(); ++p)
        if (parts[p].contains(l)) return p;
    throw InvalidArgument("index " + std::to_string(l) + " is in no part");
}

std::string PartitionWithBoundedGaps::check(std::uint64_t horizon) const {
    if (parts.size() != gap_bounds.size()) return "one gap bound per part required";
    for (std::uint64_t l = 0; l < horizon; ++l) {
        int hits = 0;
        for (const auto& p : parts) hits += p.contains(l) ? 1 : 0;
        if (hits != 1) return "index " + std::to_string(l) + " lies in " + std::to_string(hits) + " parts";
    }
    for (std::size_t p = 0; p < parts.size(); ++p) {
        auto m = parts[p].members(0, horizon);
        if (m.empty()) return "part " + std::to_string(p) + " is empty below the horizon";
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j > 0 && m[j] - m[j - 1] > gap_bounds[p]) return "gap above R in part " + std::to_string(p);
            if (m[j] > (j + 1) * gap_bounds[p]) return "l_j > j*R in part " + std::to_string(p);
        }
        if (horizon - 1 - m.back() >= gap_bounds[p]) return "part " + std::to_string(p) + " stops before the horizon";
    }
    return {};
}

PartitionWithBoundedGaps PartitionWithBoundedGaps::residues(std::uint64_t m) {
    if (m == 0) throw InvalidArgument("partition modulus must be positive");
    PartitionWithBoundedGaps p;
    for (std::uint64_t r = 0; r < m; ++r) {
        p.parts.push_back(IndexSet::periodic({r}, m));
        p.gap_bounds.push_back(m);
    }
    return p;
}

MultiForgeResult synthesize_weight_multi(const std::vector<IndexSet>& sets, const std::vector<Rational>& deltas,
                                         const PartitionWithBoundedGaps& partition, std::uint64_t horizon,
                                         const ForgeOptions& options) {
    if (sets.empty()) throw InvalidArgument("need at least one set");
    if (sets.size() != deltas.size()) throw InvalidArgument("one delta per set required");
    if (partition.parts.size() != sets.size()) throw InvalidArgument("partition must have one part per set");
    for (std::size_t n = 0; n < deltas.size(); ++n)
        if (deltas[n] <= 0 || deltas[n] > 1)
            throw InvalidArgument("delta of set " + std::to_string(n) + " must lie in (0, 1]");
    if (options.min_growth < 2) throw InvalidArgument("block lengths must strictly grow (min_growth >= 2)");
    const std::uint64_t limit = horizon * options.scan_factor;

    MultiForgeResult r;
    r.plan.breakpoints = {0};
    r.plan.horizon = horizon;
    std::uint64_t l = 0;
    while (r.plan.breakpoints.back() < horizon) {
        std::size_t p = partition.part_of(l);
        Rational floor = floor_for(deltas[p], l);
        std::uint64_t start = r.plan.breakpoints.back();
        auto b = find_block(sets[p], start, min_length(r.plan, options.min_growth), floor, limit);
        if (!b)
            throw HorizonExhausted(l, "set " + std::to_string(p) + ": no block " + std::to_string(l) +
                                          " of density >= " + to_string(floor) + " starting at " +
                                          std::to_string(start) + " below " + std::to_string(limit));
        r.plan.breakpoints.push_back(b->end);
        r.plan.floors.push_back(floor);
        r.plan.block_densities.emplace_back(make_rational(BigInt(static_cast<unsigned long>(b->members)),
                                                          BigInt(static_cast<unsigned long>(b->end - start))));
        r.plan.set_of_block.push_back(p);
        ++l;
    }
    r.weight = weight_from(r.plan);
    return r;
}

bool multi_bound_holds(const MultiForgeResult& result, const std::vector<IndexSet>& sets,
                       const std::vector<Rational>& deltas, const PartitionWithBoundedGaps& partition,
                       const WeightSeq& weight) {
    const auto& bp = result.plan.breakpoints;
    const std::uint64_t blocks = result.plan.blocks();
    for (std::size_t n = 0; n < sets.size(); ++n) {
        auto ls = partition.parts[n].members(0, blocks + 1);
        // ls[j-1] = l_j; need n_{l_{j+1}} to exist.
        for (std::size_t j = 1; j + 1 <= ls.size() && ls[j] <= blocks; ++j) {
            std::uint64_t lj = ls[j - 1], lj1 = ls[j];
            Rational bound = Rational(BigInt(static_cast<long>(j) - 3)) * deltas[n] /
                             Rational(BigInt(static_cast<unsigned long>(lj1)));
            if (bound <= 0) continue;
            for (std::uint64_t N : {bp[lj] + 1, bp[lj1]}) {
                if (N == 0) continue;
                if (density_quotient(sets[n], weight, N) < bound) return false;
            }
        }
    }
    return true;
}

bool eq_holds(const WeightSeq& weight, std::uint64_t n, std::uint64_t alpha) {
    std::uint64_t top = (1 + alpha) * n;
    Rational num = weight.sum_range(n, top);
    Rational den = weight.prefix_sum(top + 1);
    return 2 * num >= den;
}

AlphaSequence alpha_sequence(const WeightSeq& weight, std::uint64_t n_max, std::uint64_t alpha_cap) {
    auto cert = weight.family_certificate();
    if (!cert.in_family()) throw InvalidArgument("weight is not in the family: " + cert.reason);

    // Prefix sums are reused across the scan: each test needs P(n),
    // P((1+α)n) and P((1+α)n + 1).
    std::map<std::uint64_t, Rational> cache;
    auto prefix = [&](std::uint64_t m) -> const Rational& {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        auto lower = cache.lower_bound(m);
        Rational v;
        if (lower != cache.begin()) {
            --lower;
            v = lower->second + weight.sum_range(lower->first, m);
        } else {
            v = weight.prefix_sum(m);
        }
        return cache.emplace(m, std::move(v)).first->second;
    };

    AlphaSequence out;
    out.weight = weight;
    std::uint64_t alpha = 1;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        while (true) {
            if (alpha > alpha_cap)
                throw ScanExhausted(n, "no alpha <= " + std::to_string(alpha_cap) + " satisfies the ratio at n = " +
                                           std::to_string(n));
            std::uint64_t top = (1 + alpha) * n;
            Rational num = prefix(top) - prefix(n);
            if (2 * num >= prefix(top + 1)) break;
            ++alpha;
        }
        out.values.push_back(alpha);
    }
    return out;
}

}  // namespace hypodense
