#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hypodense/exactnum.hpp"

namespace hypodense {

// Finitely supported vector in l1(N) with dyadic coordinates. Zero entries
// are never stored.
class SparseVec {
public:
    using Map = std::map<std::uint64_t, Dyadic>;

    SparseVec() = default;
    static SparseVec basis(std::uint64_t j, const Dyadic& c = Dyadic(1));

    void add(std::uint64_t index, const Dyadic& value);
    Dyadic at(std::uint64_t index) const;

    const Map& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }
    // Largest index in the support; only meaningful when non-empty.
    std::uint64_t max_index() const { return entries_.rbegin()->first; }

    Dyadic l1_norm() const;
    SparseVec restricted(std::uint64_t lo, std::uint64_t hi) const;  // [lo, hi)
    SparseVec scaled(const Dyadic& c) const;

    friend SparseVec operator+(const SparseVec& x, const SparseVec& y);
    friend SparseVec operator-(const SparseVec& x, const SparseVec& y);
    friend bool operator==(const SparseVec& x, const SparseVec& y) { return x.entries_ == y.entries_; }

    std::string to_string() const;

private:
    Map entries_;
};

}  // namespace hypodense
