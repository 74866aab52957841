#pragma once

// Constructive weights:
//   - a single-set weight whose lower weighted density reaches a target
//     upper density (block plan with floors (1 - 2^-k) * delta),
//   - a multi-set weight positive on every set of a finite family,
//   - the alpha_n sequence used by the periodic-point criterion.

#include <cstdint>
#include <string>
#include <vector>

#include "hypodense/exactnum.hpp"
#include "hypodense/index_set.hpp"
#include "hypodense/weight_seq.hpp"

namespace hypodense {

struct BlockPlan {
    std::vector<std::uint64_t> breakpoints;  // n_0 = 0 < n_1 < ...
    std::vector<Rational> floors;            // one per block
    std::vector<Rational> block_densities;   // exact |[n_k, n_{k+1}) ∩ I| / length
    std::vector<std::size_t> set_of_block;   // which set each block was built for (multi only)
    std::uint64_t horizon = 0;               // breakpoints cover [0, horizon]

    std::size_t blocks() const { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }
    std::uint64_t length(std::size_t k) const { return breakpoints[k + 1] - breakpoints[k]; }
};

struct ForgeOptions {
    // Endpoints are scanned up to scan_factor * horizon.
    std::uint64_t scan_factor = 4;
    // Block k must be at least min_growth times longer than block k-1.
    std::uint64_t min_growth = 2;
};

struct ForgeResult {
    BlockPlan plan;
    WeightSeq weight = WeightSeq::unit();
};

// Builds breakpoints covering [0, horizon] with
//   |[n_k, n_{k+1}) ∩ I| / (n_{k+1} - n_k) >= (1 - 2^-k) * delta
// and n_{k+1} - n_k >= min_growth * (n_k - n_{k-1}); the weight is
// a_n = 1/(n_{k+1} - n_k) on block k. Throws HorizonExhausted(k).
ForgeResult synthesize_weight_thm1(const IndexSet& set, const Rational& delta, std::uint64_t horizon,
                                   const ForgeOptions& options = {});

// Re-checks every certificate of a plan against I by exact counting:
// floors, growth, coverage. Returns an empty string when all hold.
std::string check_plan(const BlockPlan& plan, const std::vector<IndexSet>& sets, std::uint64_t min_growth);

// Lower bound from the single-set construction: for N in (n_k, n_{k+1}],
//   Q_a(I, N) >= delta * ((k-1) - Σ_{j=1}^{k-1} 2^-j) / (k+1).
Rational thm1_lower_bound(const Rational& delta, std::uint64_t k);

// Verifies the bound above at each checkpoint N <= last breakpoint.
bool thm1_bound_holds(const BlockPlan& plan, const IndexSet& set, const WeightSeq& weight, const Rational& delta,
                      const std::vector<std::uint64_t>& checkpoints);

// A partition of the block indices l into parts with bounded gaps.
struct PartitionWithBoundedGaps {
    std::vector<IndexSet> parts;
    std::vector<std::uint64_t> gap_bounds;  // R_n per part

    std::size_t part_of(std::uint64_t l) const;
    // Every l < horizon in exactly one part; consecutive members of part n
    // differ by <= R_n; the j-th member (from 1) is <= j * R_n.
    std::string check(std::uint64_t horizon) const;

    // Residue classes mod m, R = m.
    static PartitionWithBoundedGaps residues(std::uint64_t m);
};

struct MultiForgeResult {
    BlockPlan plan;
    WeightSeq weight = WeightSeq::unit();
    // Blocks are chosen in increasing l, each for the set owning l; recorded
    // in output metadata since the order is a choice, not a requirement.
    std::string selection_order = "greedy-by-l";
};

// Throws HorizonExhausted(l) naming the set index in the message, or
// InvalidArgument for a non-positive target.
MultiForgeResult synthesize_weight_multi(const std::vector<IndexSet>& sets, const std::vector<Rational>& deltas,
                                         const PartitionWithBoundedGaps& partition, std::uint64_t horizon,
                                         const ForgeOptions& options = {});

// (j - 3) * delta_n / l_{j+1}; checked at N = n_{l_j} + 1 and N = n_{l_{j+1}}
// for every consecutive pair of part-n indices inside the plan.
bool multi_bound_holds(const MultiForgeResult& result, const std::vector<IndexSet>& sets,
                       const std::vector<Rational>& deltas, const PartitionWithBoundedGaps& partition,
                       const WeightSeq& weight);

struct AlphaSequence {
    std::vector<std::uint64_t> values;  // values[n-1] = alpha_n
    WeightSeq weight = WeightSeq::unit();

    std::uint64_t at(std::uint64_t n) const { return values.at(n - 1); }
};

// Σ_{k=n}^{(1+α)n-1} a_k / Σ_{k=0}^{(1+α)n} a_k >= 1/2, exactly.
bool eq_holds(const WeightSeq& weight, std::uint64_t n, std::uint64_t alpha);

// Pointwise-minimal non-decreasing (alpha_n)_{1..n_max}, alpha_n >= 1.
// Throws ScanExhausted(n) if alpha_n would exceed alpha_cap.
AlphaSequence alpha_sequence(const WeightSeq& weight, std::uint64_t n_max, std::uint64_t alpha_cap = 1u << 20);

}  // namespace hypodense
