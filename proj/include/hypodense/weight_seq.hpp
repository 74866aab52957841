#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hypodense/exactnum.hpp"
#include "hypodense/index_set.hpp"

namespace hypodense {

class WeightSeq;

namespace weights {

struct Unit {};      // a_n = 1
struct Harmonic {};  // a_n = 1/(n+1)

// a_n = 1/(n_{k+1} - n_k) on [n_k, n_{k+1}). The explicit breakpoints start
// at 0; past the last one, block lengths continue as L' = mult*L + add.
struct BlockConstant {
    std::vector<std::uint64_t> breakpoints;
    std::uint64_t tail_mult = 2;
    std::uint64_t tail_add = 0;
};

// Explicit values on [0, prefix.size()), then a_n = tail.value(n).
struct Table {
    std::vector<Rational> prefix;
    std::shared_ptr<const WeightSeq> tail;
};

}  // namespace weights

// Structural evidence that a weight is (or is not) in the family of
// non-increasing positive sequences tending to 0 with divergent sum.
struct FamilyCertificate {
    bool positive = false;
    bool non_increasing = false;
    bool tends_to_zero = false;
    bool divergent_sum = false;
    std::string reason;

    bool in_family() const { return positive && non_increasing && tends_to_zero && divergent_sum; }
};

class WeightSeq {
public:
    using Variant = std::variant<weights::Unit, weights::Harmonic, weights::BlockConstant, weights::Table>;

    static WeightSeq unit() { return WeightSeq(weights::Unit{}); }
    static WeightSeq harmonic() { return WeightSeq(weights::Harmonic{}); }
    static WeightSeq block_constant(std::vector<std::uint64_t> breakpoints, std::uint64_t tail_mult = 2,
                                    std::uint64_t tail_add = 0);
    static WeightSeq table(std::vector<Rational> prefix, const WeightSeq& tail);

    Rational value(std::uint64_t n) const;
    // Σ_{n < N} a_n
    Rational prefix_sum(std::uint64_t n) const { return sum_range(0, n); }
    // Σ_{lo <= n < hi} a_n
    Rational sum_range(std::uint64_t lo, std::uint64_t hi) const;
    // Σ_{n ∈ I ∩ [lo, hi)} a_n
    Rational sum_over(const IndexSet& set, std::uint64_t lo, std::uint64_t hi) const;
    // Σ_{n ∈ I, lo <= n < hi} a_{n+1}: the weight mass of (I ∩ [lo, hi)) + 1.
    Rational sum_over_shifted(const IndexSet& set, std::uint64_t lo, std::uint64_t hi) const;

    FamilyCertificate family_certificate() const;

    // Constant-weight blocks of a BlockConstant weight meeting [0, n).
    std::vector<Interval> blocks_below(std::uint64_t n) const;

    const Variant& variant() const noexcept { return v_; }
    std::string describe() const;

private:
    explicit WeightSeq(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// Σ 1/d over the given positive denominators, by balanced pairwise
// summation with a single final reduction.
Rational sum_unit_fractions(const std::vector<std::uint64_t>& denominators);

}  // namespace hypodense
