#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace hypodense {

struct Interval {
    std::uint64_t lo = 0;  // inclusive
    std::uint64_t hi = 0;  // exclusive
    friend bool operator==(const Interval&, const Interval&) = default;
};

class IndexSet;

namespace sets {

struct Explicit {
    std::vector<std::uint64_t> elements;  // strictly increasing
};

struct Periodic {
    std::vector<std::uint64_t> residues;  // strictly increasing, each < modulus
    std::uint64_t modulus = 1;
};

// Union of half-open blocks [l_k, r_k) with r_k <= l_{k+1}. Either an
// explicit block list or the generator k -> [lo_mult*base^k, hi_mult*base^k)
// for k >= first_k.
struct BlockUnion {
    std::vector<Interval> blocks;
    struct Geometric {
        std::uint64_t base = 2;
        std::uint64_t lo_mult = 1;
        std::uint64_t hi_mult = 1;
        std::uint64_t first_k = 0;
    };
    std::vector<Geometric> geometric;  // zero or one entry
};

struct Complement {
    std::shared_ptr<const IndexSet> inner;
};

}  // namespace sets

// Subset of the naturals with membership and prefix counts. Immutable.
class IndexSet {
public:
    using Variant = std::variant<sets::Explicit, sets::Periodic, sets::BlockUnion, sets::Complement>;

    static IndexSet explicit_set(std::vector<std::uint64_t> elements);
    static IndexSet periodic(std::vector<std::uint64_t> residues, std::uint64_t modulus);
    static IndexSet block_union(std::vector<Interval> blocks);
    static IndexSet geometric_blocks(std::uint64_t base, std::uint64_t lo_mult, std::uint64_t hi_mult,
                                     std::uint64_t first_k = 0);
    static IndexSet complement_of(const IndexSet& inner);

    static IndexSet empty() { return explicit_set({}); }
    static IndexSet all() { return periodic({0}, 1); }
    static IndexSet evens() { return periodic({0}, 2); }
    static IndexSet odds() { return periodic({1}, 2); }

    IndexSet complement() const { return complement_of(*this); }

    bool contains(std::uint64_t n) const;
    // |I ∩ [0, n)|
    std::uint64_t prefix_count(std::uint64_t n) const;
    // |I ∩ [lo, hi)|
    std::uint64_t count(std::uint64_t lo, std::uint64_t hi) const;
    // Sorted members of I ∩ [lo, hi).
    std::vector<std::uint64_t> members(std::uint64_t lo, std::uint64_t hi) const;

    // Positions n in [lo, hi] where membership of n-1 and n differ, for the
    // variants where these are sparse (block unions, finite sets). Periodic
    // sets report none.
    std::vector<std::uint64_t> transition_hints(std::uint64_t lo, std::uint64_t hi) const;

    // Blocks of a BlockUnion that meet [0, n), in order.
    std::vector<Interval> blocks_below(std::uint64_t n) const;

    const Variant& variant() const noexcept { return v_; }

    std::string describe() const;

private:
    explicit IndexSet(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

}  // namespace hypodense
