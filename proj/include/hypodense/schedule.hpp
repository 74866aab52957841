#pragma once

// The integer data behind the C-type operator: the map ψ, the block counts
// n_k, and the sequences δ, τ, Δ. Everything here is exact integer
// arithmetic; γ_k is kept as its exponent E_k.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypodense/exactnum.hpp"

namespace hypodense {

class PsiMap {
public:
    // Deterministic round-robin: pairs (i, j) in increasing j, then i,
    // repeated; a pair is placed at the first k where it is admissible.
    static PsiMap build(std::uint64_t i_max, std::uint64_t j_max, std::uint64_t multiplicity, std::uint64_t horizon);
    // Wraps an arbitrary table (k = 1..size) without checking it.
    static PsiMap from_table(std::vector<std::pair<std::uint64_t, std::uint64_t>> table);

    std::uint64_t horizon() const { return table_.size(); }
    std::uint64_t psi1(std::uint64_t k) const { return table_.at(k - 1).first; }
    std::uint64_t psi2(std::uint64_t k) const { return table_.at(k - 1).second; }
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& table() const noexcept { return table_; }

    // j_i = max(i + 1, 1 + max{ψ₂(k) : k < i}): the smallest j for which
    // (i, j) can be a value of ψ at all.
    std::uint64_t j_start(std::uint64_t i) const;
    std::uint64_t fiber_count(std::uint64_t i, std::uint64_t j, std::uint64_t k_limit) const;
    std::uint64_t max_psi2(std::uint64_t k_limit) const;

    // Empty if the constraint 1 <= ψ₁(k) < min(k+1, ψ₂(k)) and
    // ψ₂(k) > max{ψ₂(j) : j < ψ₁(k)} holds for every k in the table.
    std::string validate() const;

    std::uint64_t i_max = 0, j_max = 0, multiplicity = 0;

private:
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table_;
};

enum class ScheduleMode { structural, asymptotic };

struct ScheduleSeeds {
    BigInt delta0{1};
    BigInt tau0{1};
    BigInt Delta0{2};
    // Structural mode only: Δ^{(k)} is the least multiple of 2Δ^{(k-1)} that
    // is >= Delta_scale * ((k+3)δ^{(ψ₂(k))} + 4n_{k+1} + 3).
    std::uint64_t Delta_scale = 1;
};

struct Schedule {
    ScheduleMode mode = ScheduleMode::structural;
    PsiMap psi;
    ScheduleSeeds seeds;
    std::uint64_t k_max = 0;
    std::vector<std::uint64_t> n;      // n[0..max(k_max+1, d_max)]
    std::vector<BigInt> delta, tau;    // indices 0..d_max
    std::vector<BigInt> Delta;         // indices 0..k_max
    std::vector<BigInt> gamma_exp;     // index k in 1..d_max, E_k; [0] unused

    std::uint64_t d_max() const { return delta.size() - 1; }
    // Number of blocks n with n < n_{k_max+1}, i.e. the blocks the schedule
    // fully describes.
    std::uint64_t block_count() const { return n.at(k_max + 1); }
    // k with n_k <= block < n_{k+1}; block 0 has k = 0.
    std::uint64_t k_of_block(std::uint64_t block) const;
    Pow2 gamma(std::uint64_t k) const { return Pow2(gamma_exp.at(k)); }
};

// E_k = k δ^{(k-1)} + 2 n_k + 1 - τ^{(k)}
BigInt gamma_exponent(std::uint64_t k, const BigInt& delta_prev, std::uint64_t n_k, const BigInt& tau_k);

// Throws Infeasible when the ψ table is too short for k_max or for the
// δ indices ψ₂(k) it references.
Schedule build_schedule(ScheduleMode mode, const PsiMap& psi, std::uint64_t k_max, const ScheduleSeeds& seeds);

struct ScheduleCheck {
    std::string name;
    bool holds = true;
    std::uint64_t first_failure = 0;  // k
};

// Structural invariants (monotonicity, Δ multiples, Δ size bound) followed
// by the four growth conditions in exponent space.
std::vector<ScheduleCheck> check_structural(const Schedule& s);
std::vector<ScheduleCheck> check_asymptotic(const Schedule& s);

}  // namespace hypodense
