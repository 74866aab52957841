#pragma once

// Orbit experiments on realized C-type operators: the shadowing vector z
// for the periodic-point criterion, the two block propositions, hitting
// sets and their weighted densities.

#include <cstdint>
#include <string>
#include <vector>

#include "hypodense/ctype.hpp"
#include "hypodense/densities.hpp"
#include "hypodense/exactnum.hpp"
#include "hypodense/sparse_vec.hpp"
#include "hypodense/weight_seq.hpp"
#include "hypodense/weightforge.hpp"

namespace hypodense {

struct ShadowingCertificate {
    SparseVec x;
    Rational epsilon;
    std::uint64_t k0 = 0;  // support(x) below b_{n_{k0}}
    std::uint64_t K = 0;
    std::uint64_t k = 0;
    std::uint64_t n = 0;       // 2 δ^{(K)}
    std::uint64_t window = 0;  // α_n * n
    SparseVec z;
    Dyadic norm_z;
    Dyadic max_orbit_error;
    // |v^{(k)}| Π_{i=b_{n+1}-2δ}^{b_{n+1}-1} |w_i| for each block of k, and
    // whether every one equals 2^{δ^{(K)} - τ^{(K)}}.
    std::vector<Dyadic> eq9_values;
    Pow2 eq9_target;
    bool eq9_holds = false;
    bool eq10_holds = false;
    bool norm_ok = false;
    bool orbit_ok = false;

    bool holds() const { return eq9_holds && eq10_holds && norm_ok && orbit_ok; }
};

// Searches K (then k) within the realized parameters. Throws NoFeasibleFiber
// when ψ offers no suitable fiber, NoFeasibleK when no K meets the ε bound.
ShadowingCertificate build_shadowing_vector(const CTypeParams& params, const SparseVec& x, const Rational& epsilon,
                                            const AlphaSequence& alpha);

// |v_m| * sup_{j in block φ(m)} Π_{s=b_{φ(m)}+1}^{j} |w_s|, for m = 1..l.
std::vector<Dyadic> prop50_hypothesis(const CTypeParams& params, std::uint64_t l);

struct Prop50Result {
    bool conclusion1 = true;
    bool conclusion2 = true;
    std::uint64_t failing_j = 0;
    bool holds() const { return conclusion1 && conclusion2; }
};

// C holds C_0..C_l (C_0 unused). Throws HypothesisViolated(m) if some C_m is
// not in (0, 1) or is below the hypothesis value.
Prop50Result prop50_check(const CTypeParams& params, const SparseVec& x, std::uint64_t l, std::uint64_t n,
                          const std::vector<Rational>& C, std::uint64_t j_max);

// 1 - 2 (L - (K1 - K0)) (1/(J+1) + 1/L)
Rational prop51_bound(std::uint64_t block_length, std::uint64_t K0, std::uint64_t K1, std::uint64_t J);

struct Prop51Result {
    std::uint64_t K0 = 0, K1 = 0;
    Dyadic alpha;
    std::uint64_t hits = 0;  // #{0 <= j <= J : ‖P_l T^j P_l x‖ >= α^-1 X_l / 2}
    std::uint64_t J = 0;
    Rational frequency;
    Rational bound;
    bool holds = false;
};

// Explicit (K0, K1): checks the flat-weight precondition and counts.
Prop51Result prop51_check(const CTypeParams& params, const SparseVec& x, std::uint64_t l, std::uint64_t K0,
                          std::uint64_t K1, std::uint64_t J);
// (K0, K1) from the weight table of block l >= 1:
// K0 = kδ + 2l + 1, K1 = Δ - 3δ - 2l - 1.
Prop51Result prop51_check(const CTypeParams& params, const SparseVec& x, std::uint64_t l, std::uint64_t J);

struct Ball {
    SparseVec center;
    Rational radius;
};

struct HittingReport {
    SparseVec x;
    Ball ball;
    std::uint64_t step_horizon = 0;
    std::vector<std::uint64_t> visits;  // m in [0, step_horizon] with ‖T^m x - c‖ < r
    DensityReport density;
    // Smallest p <= step_horizon with T^p c = c, or 0.
    std::uint64_t center_period = 0;
};

HittingReport hitting_density(const CTypeParams& params, const SparseVec& x, const Ball& ball,
                              std::uint64_t step_horizon, const WeightSeq& weight,
                              const EstimateOptions& options = {});

struct IdentityRow {
    std::size_t vector = 0, ball = 0, weight = 0;
    std::string weight_name;
    bool certified = false;  // weight carries a family certificate
    Rational lower_unit, upper_unit, lower_a, upper_a;
    bool chain_holds = false;
};

struct IdentityReport {
    std::vector<IdentityRow> rows;
    bool all_hold = true;
    std::string scope_note;
};

// Tabulates unit and weighted estimates of every visit set and checks
// lower_unit <= lower_a + tol, lower_a <= upper_a, upper_a <= upper_unit + tol
// for certified weights.
IdentityReport set_identity_check(const CTypeParams& params, const std::vector<SparseVec>& vectors,
                                  const std::vector<WeightSeq>& weights, const std::vector<Ball>& balls,
                                  std::uint64_t step_horizon, const Rational& tol);

}  // namespace hypodense
