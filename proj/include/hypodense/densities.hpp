#pragma once

// Weighted prefix densities of integer sets.
//
// All prefixes are half-open: Q_a(I, N) = Σ_{n ∈ I ∩ [0,N)} a_n / Σ_{n < N} a_n.
// limsup/liminf are rendered at a finite horizon as max/min of exact
// quotients over a checkpoint grid restricted to the tail window
// [tail_fraction * horizon, horizon].

#include <cstdint>
#include <optional>
#include <vector>

#include "hypodense/exactnum.hpp"
#include "hypodense/index_set.hpp"
#include "hypodense/weight_seq.hpp"

namespace hypodense {

struct DensityReport {
    std::vector<std::uint64_t> checkpoints;
    std::vector<Rational> quotients;
    Rational lower_estimate;
    Rational upper_estimate;
    std::uint64_t tail_window_start = 0;
    std::uint64_t horizon = 0;
};

struct EstimateOptions {
    Rational tail_fraction{1, 2};
    Rational grid_ratio{5, 4};
    // Also evaluate at the set's membership transitions (block endpoints),
    // where the quotient of a block set attains its local extrema.
    bool include_transitions = true;
};

Rational density_quotient(const IndexSet& set, const WeightSeq& weight, std::uint64_t n);

// Geometric grid 1 = N_0 < N_1 < ... < horizon with N_{i+1} = max(N_i + 1,
// floor(N_i * ratio)); the horizon is always the last point.
std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t horizon, const Rational& ratio);

DensityReport estimate_densities(const IndexSet& set, const WeightSeq& weight, std::uint64_t horizon,
                                 const EstimateOptions& options = {});

// Evaluates Q at exactly the given (strictly increasing, >= 1) checkpoints.
std::vector<Rational> quotients_at(const IndexSet& set, const WeightSeq& weight,
                                   const std::vector<std::uint64_t>& checkpoints);

bool duality_check(const IndexSet& set, const WeightSeq& weight, std::uint64_t n);

struct MonotonicityEstimates {
    Rational lower_b;
    Rational lower_a;
    Rational upper_a;
    Rational upper_b;

    // lower_b <= lower_a + tol, lower_a <= upper_a, upper_a <= upper_b + tol
    bool chain_holds(const Rational& tol) const;
};

// Requires a certificate that a_n / b_n is non-increasing and tends to 0;
// certified pairs are (a in the family, b = unit). Throws CertificateFailed.
MonotonicityEstimates monotonicity_check(const IndexSet& set, const WeightSeq& a, const WeightSeq& b,
                                         std::uint64_t horizon, const EstimateOptions& options = {});

struct DropIndices {
    IndexSet set = IndexSet::empty();
    std::vector<std::uint64_t> indices;
    // a_{n_k} <= a_0 * alpha^{k-1} for every enumerated n_k (k from 1)
    bool geometric_bound_holds = true;
};

// {n < horizon : a_{n+1} / a_n <= alpha}
DropIndices ratio_drop_indices(const WeightSeq& weight, const Rational& alpha, std::uint64_t horizon);

struct ShiftGap {
    Rational shifted_quotient;  // Q_a(I+1, N)
    Rational quotient;          // Q_a(I, N)
    Rational drop_quotient;     // Q_a(drop set, N)
    // a_{N-1} / Σ_{n<N} a_n when N-1 ∈ I and N-1 is not a drop index: the one
    // element of I ∩ [0,N) whose successor falls outside the prefix.
    Rational boundary_term;
    Rational gap;  // shifted - alpha*quotient + alpha*drop + alpha*boundary >= 0
};

ShiftGap shift_quotient_gap(const IndexSet& set, const WeightSeq& weight, const Rational& alpha, std::uint64_t n);

}  // namespace hypodense
