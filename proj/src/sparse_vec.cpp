#include "hypodense/sparse_vec.hpp"

namespace hypodense {

SparseVec SparseVec::basis(std::uint64_t j, const Dyadic& c) {
    SparseVec v;
    v.add(j, c);
    return v;
}

void SparseVec::add(std::uint64_t index, const Dyadic& value) {
    if (value.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(index, value);
    if (inserted) return;
    it->second += value;
    if (it->second.is_zero()) entries_.erase(it);
}

Dyadic SparseVec::at(std::uint64_t index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? Dyadic(0) : it->second;
}

Dyadic SparseVec::l1_norm() const {
    Dyadic s(0);
    for (const auto& [i, c] : entries_) s += c.abs();
    return s;
}

SparseVec SparseVec::restricted(std::uint64_t lo, std::uint64_t hi) const {
    SparseVec out;
    for (auto it = entries_.lower_bound(lo); it != entries_.end() && it->first < hi; ++it)
        out.entries_.emplace_hint(out.entries_.end(), it->first, it->second);
    return out;
}

SparseVec SparseVec::scaled(const Dyadic& c) const {
    SparseVec out;
    if (c.is_zero()) return out;
    for (const auto& [i, v] : entries_) out.entries_.emplace_hint(out.entries_.end(), i, v * c);
    return out;
}

SparseVec operator+(const SparseVec& x, const SparseVec& y) {
    SparseVec out = x;
    for (const auto& [i, c] : y.entries_) out.add(i, c);
    return out;
}

SparseVec operator-(const SparseVec& x, const SparseVec& y) {
    SparseVec out = x;
    for (const auto& [i, c] : y.entries_) out.add(i, -c);
    return out;
}

std::string SparseVec::to_string() const {
    std::string s = "{";
    bool first = true;
    for (const auto& [i, c] : entries_) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(i) + ": " + c.to_string();
    }
    return s + "}";
}

}  // namespace hypodense
