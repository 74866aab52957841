#pragma once

// Seeded invariant suites behind `hypodense verify`, plus the small toy
// parameter sets shared with the tests.

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hypodense/ctype.hpp"
#include "hypodense/schedule.hpp"
#include "hypodense/sparse_vec.hpp"
#include "hypodense/weightforge.hpp"

namespace hypodense {

namespace toys {

// ψ = (1,2),(1,3),(2,3),... with default seeds; k_max = 4, six blocks.
Schedule structural_schedule();
CTypeParams structural_params();

// ψ ≡ (1,2), δ0 = 12, τ0 = 1, Δ0 = 2, k_max = 5: x = e_0 admits K = 2, k = 5
// against the shadow weight below.
Schedule shadow_schedule();
CTypeParams shadow_params();
// a_n = 1/1024 on [0, 1024), then doubling blocks; α_n = 2 for small n.
WeightSeq shadow_weight();

// τ0 = 60 dominates every kδ + 2n + 1, so the block hypothesis holds with
// C_m = |v_m| sup prod < 1; Delta_scale = 8 keeps the flat stretch long.
Schedule prop_schedule();
CTypeParams prop_params();

// ψ(2,4) round robin to k = 10 in asymptotic mode.
Schedule asymptotic_schedule();

}  // namespace toys

// A random dyadic vector supported in [lo, hi): `terms` coordinates with
// mantissas in [-8, 8] \ {0} and exponents in [-3, 3].
SparseVec random_sparse(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi, std::size_t terms);

struct VerifyOptions {
    std::string suite = "all";  // exactnum, densities, weightforge, ctype, dynlab, all
    ScheduleMode mode = ScheduleMode::structural;
    std::uint64_t seed = 1;
    std::uint64_t trials = 50;
};

struct VerifyLine {
    std::string suite, check;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyLine> lines;
    bool all_passed() const;
    void write(std::ostream& out) const;
};

// Throws ConfigError for an unknown suite name.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace hypodense
