#pragma once

// Operator of C-type on l1(N), realized from a schedule:
//
//   T e_k = w_{k+1} e_{k+1}                               k in [b_n, b_{n+1}-1)
//   T e_k = v_n e_{b_φ(n)} - (Π_{b_n<j<b_{n+1}} w_j)^-1 e_{b_n}   k = b_{n+1}-1, n >= 1
//   T e_k = -(Π_{0<j<b_1} w_j)^-1 e_0                     k = b_1 - 1
//
// For n in [n_k, n_{k+1}): φ(n) = n - n_k, v_n = 2^{-τ^{(ψ₂(k))}},
// b_{n+1} - b_n = Δ^{(k)}, and with i = j - b_n in [1, Δ^{(k)}), d = δ^{(ψ₂(k))}:
//
//   w = 2    for 1 <= i <= kd + 2n + 1
//   w = 1    for kd + 2n + 1 < i < Δ - 3d - 2n - 1
//   w = 1/2  for Δ - 3d - 2n - 1 <= i < Δ - 2d
//   w = 2    for Δ - 2d <= i < Δ - d
//   w = 1    for Δ - d <= i < Δ
//
// Block 0 is not covered by the table; its weights are all 1.

#include <cstdint>
#include <string>
#include <vector>

#include "hypodense/exactnum.hpp"
#include "hypodense/schedule.hpp"
#include "hypodense/sparse_vec.hpp"

namespace hypodense {

// A constant stretch of weights inside one block, by offset i = j - b_n.
struct WeightRun {
    std::uint64_t begin = 0;  // inclusive offset
    std::uint64_t end = 0;    // exclusive offset
    Dyadic value;
};

struct CTypeData {
    std::vector<std::uint64_t> b;              // b_0 .. b_{n_max+1}
    std::vector<std::uint64_t> phi;            // φ(0) .. φ(n_max)
    std::vector<Dyadic> v;                     // v_0 (unused) .. v_{n_max}
    std::vector<std::vector<WeightRun>> w;     // per block, tiling offsets [1, b_{n+1}-b_n)

    std::uint64_t blocks() const { return phi.size(); }
};

class CTypeParams {
public:
    // Builds the data for blocks 0..n_max (all within the schedule) and
    // validates it. Throws ExponentOverflow if b or v cannot be materialized.
    static CTypeParams realize(const Schedule& schedule, std::uint64_t n_max);
    // Wraps arbitrary data and validates it against the schedule; throws
    // ValidationError naming the first violated invariant.
    static CTypeParams from_data(const Schedule& schedule, CTypeData data);

    const Schedule& schedule() const noexcept { return schedule_; }
    const CTypeData& data() const noexcept { return data_; }
    std::uint64_t n_max() const { return data_.blocks() - 1; }
    std::uint64_t b(std::uint64_t n) const { return data_.b.at(n); }
    std::uint64_t block_length(std::uint64_t n) const { return data_.b.at(n + 1) - data_.b.at(n); }
    std::uint64_t phi(std::uint64_t n) const { return data_.phi.at(n); }
    const Dyadic& v(std::uint64_t n) const { return data_.v.at(n); }
    // Exclusive bound of the realized support.
    std::uint64_t support_end() const { return data_.b.back(); }

    std::uint64_t block_of(std::uint64_t index) const;
    Dyadic w(std::uint64_t j) const;
    // Π_{s=lo}^{hi} w_s within one block; 1 when hi < lo.
    Dyadic weight_product(std::uint64_t lo, std::uint64_t hi) const;
    // Π_{j=b_n+1}^{b_{n+1}-1} w_j
    const Dyadic& block_product(std::uint64_t n) const { return block_product_.at(n); }
    // sup and inf of |w_j| over the realized interior indices.
    Dyadic sup_abs_w() const;
    Dyadic inf_abs_w() const;

    SparseVec apply(const SparseVec& x) const;
    SparseVec apply_power(const SparseVec& x, std::uint64_t m) const;

    SparseVec project_block(const SparseVec& x, std::uint64_t l) const;
    // X_l = ‖Σ_{k in block l} (Π_{s=k+1}^{b_{l+1}-1} w_s) x_k e_k‖
    Dyadic block_functional(const SparseVec& x, std::uint64_t l) const;

    // Number of n <= n_max with φ(n) = l.
    std::uint64_t phi_preimage_count(std::uint64_t l) const;

private:
    CTypeParams(Schedule schedule, CTypeData data);
    void validate();

    Schedule schedule_;
    CTypeData data_;
    std::vector<Dyadic> block_product_;
    std::vector<Dyadic> block_product_inverse_;
};

// Weight table for block n with parameters (k, d, Δ); runs cover [1, Δ).
std::vector<WeightRun> weight_table(std::uint64_t k, std::uint64_t n, std::uint64_t d, std::uint64_t Delta);

// x^e for a dyadic x.
Dyadic dyadic_pow(const Dyadic& x, std::uint64_t e);

}  // namespace hypodense
