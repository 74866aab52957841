#include <algorithm>
#include <deque>

#include "hypodense/schedule.hpp"

namespace hypodense {

namespace {

// Endless stream (i, j): for each round, j = 2..j_max, i = 1..min(i_max, j-1).
class RoundRobin {
public:
    RoundRobin(std::uint64_t i_max, std::uint64_t j_max) : i_max_(i_max), j_max_(j_max) {}

    std::pair<std::uint64_t, std::uint64_t> next() {
        auto out = std::make_pair(i_, j_);
        if (i_ < std::min(i_max_, j_ - 1)) {
            ++i_;
        } else {
            i_ = 1;
            j_ = j_ < j_max_ ? j_ + 1 : 2;
        }
        return out;
    }

private:
    std::uint64_t i_max_, j_max_;
    std::uint64_t i_ = 1, j_ = 2;
};

}  // namespace

PsiMap PsiMap::build(std::uint64_t i_max, std::uint64_t j_max, std::uint64_t multiplicity, std::uint64_t horizon) {
    if (i_max == 0) throw InvalidArgument("i_max must be >= 1");
    if (j_max < 2) throw InvalidArgument("j_max must be >= 2 (psi2 > psi1 >= 1)");
    if (horizon == 0) throw InvalidArgument("psi horizon must be positive");

    PsiMap m;
    m.i_max = i_max;
    m.j_max = j_max;
    m.multiplicity = multiplicity;

    RoundRobin stream(i_max, j_max);
    std::deque<std::pair<std::uint64_t, std::uint64_t>> pending;
    for (std::uint64_t k = 1; k <= horizon; ++k) {
        bool placed = false;
        while (!placed) {
            for (auto it = pending.begin(); it != pending.end();) {
                auto [i, j] = *it;
                if (i > k) {
                    ++it;
                    continue;
                }
                // ψ₂(1..i-1) is final once i <= k, so an inadmissible j
                // never becomes admissible: drop it.
                if (j < m.j_start(i)) {
                    it = pending.erase(it);
                    continue;
                }
                m.table_.emplace_back(i, j);
                pending.erase(it);
                placed = true;
                break;
            }
            if (!placed) pending.push_back(stream.next());
        }
    }

    for (std::uint64_t i = 1; i <= i_max; ++i) {
        for (std::uint64_t j = m.j_start(i); j <= j_max; ++j) {
            std::uint64_t c = m.fiber_count(i, j, horizon);
            if (c < multiplicity)
                throw Infeasible("fiber (" + std::to_string(i) + ", " + std::to_string(j) + ") is hit " +
                                 std::to_string(c) + " < " + std::to_string(multiplicity) + " times within k <= " +
                                 std::to_string(horizon));
        }
    }
    return m;
}

PsiMap PsiMap::from_table(std::vector<std::pair<std::uint64_t, std::uint64_t>> table) {
    PsiMap m;
    m.table_ = std::move(table);
    for (auto [i, j] : m.table_) {
        m.i_max = std::max(m.i_max, i);
        m.j_max = std::max(m.j_max, j);
    }
    return m;
}

std::uint64_t PsiMap::j_start(std::uint64_t i) const {
    std::uint64_t j = i + 1;
    for (std::uint64_t k = 1; k < i && k <= table_.size(); ++k) j = std::max(j, psi2(k) + 1);
    return j;
}

std::uint64_t PsiMap::fiber_count(std::uint64_t i, std::uint64_t j, std::uint64_t k_limit) const {
    std::uint64_t c = 0;
    for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(k_limit, table_.size()); ++k)
        if (psi1(k) == i && psi2(k) == j) ++c;
    return c;
}

std::uint64_t PsiMap::max_psi2(std::uint64_t k_limit) const {
    std::uint64_t m = 0;
    for (std::uint64_t k = 1; k <= std::min<std::uint64_t>(k_limit, table_.size()); ++k) m = std::max(m, psi2(k));
    return m;
}

std::string PsiMap::validate() const {
    for (std::uint64_t k = 1; k <= table_.size(); ++k) {
        auto [p1, p2] = table_[k - 1];
        if (p1 < 1 || p1 >= std::min(k + 1, p2))
            return "k=" + std::to_string(k) + ": need 1 <= psi1 < min(k+1, psi2), got (" + std::to_string(p1) + ", " +
                   std::to_string(p2) + ")";
        for (std::uint64_t j = 1; j < p1; ++j)
            if (p2 <= psi2(j))
                return "k=" + std::to_string(k) + ": psi2 = " + std::to_string(p2) + " <= psi2(" + std::to_string(j) +
                       ") = " + std::to_string(psi2(j));
    }
    return {};
}

}  // namespace hypodense
