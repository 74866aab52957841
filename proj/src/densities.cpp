#include "hypodense/densities.hpp"

#include <algorithm>

namespace hypodense {

Rational density_quotient(const IndexSet& set, const WeightSeq& weight, std::uint64_t n) {
    if (n == 0) throw InvalidArgument("density quotient needs a non-empty prefix (N >= 1)");
    Rational total = weight.prefix_sum(n);
    Rational part = weight.sum_over(set, 0, n);
    return Rational(part / total);
}

std::vector<std::uint64_t> geometric_checkpoints(std::uint64_t horizon, const Rational& ratio) {
    if (horizon == 0) throw InvalidArgument("horizon must be positive");
    if (ratio <= 1) throw InvalidArgument("checkpoint ratio must exceed 1");
    std::vector<std::uint64_t> out;
    std::uint64_t n = 1;
    while (n < horizon) {
        out.push_back(n);
        BigInt next = BigInt(static_cast<unsigned long>(n)) * ratio.get_num() / ratio.get_den();
        std::uint64_t cand = next.fits_ulong_p() ? next.get_ui() : horizon;
        n = std::max(n + 1, cand);
    }
    out.push_back(horizon);
    return out;
}

std::vector<Rational> quotients_at(const IndexSet& set, const WeightSeq& weight,
                                   const std::vector<std::uint64_t>& checkpoints) {
    std::vector<Rational> out;
    out.reserve(checkpoints.size());
    Rational part(0), total(0);
    std::uint64_t prev = 0;
    for (auto n : checkpoints) {
        if (n == 0 || n <= prev) {
            if (n == 0) throw InvalidArgument("checkpoint 0 has an empty prefix");
            throw InvalidArgument("checkpoints must be strictly increasing");
        }
        part += weight.sum_over(set, prev, n);
        total += weight.sum_range(prev, n);
        out.emplace_back(part / total);
        prev = n;
    }
    return out;
}

DensityReport estimate_densities(const IndexSet& set, const WeightSeq& weight, std::uint64_t horizon,
                                 const EstimateOptions& options) {
    if (horizon < 10) throw InvalidArgument("density estimation needs horizon >= 10");
    if (options.tail_fraction <= 0 || options.tail_fraction >= 1)
        throw InvalidArgument("tail fraction must lie in (0, 1)");

    DensityReport report;
    report.horizon = horizon;
    report.checkpoints = geometric_checkpoints(horizon, options.grid_ratio);
    if (options.include_transitions) {
        for (auto t : set.transition_hints(1, horizon)) report.checkpoints.push_back(t);
        std::sort(report.checkpoints.begin(), report.checkpoints.end());
        report.checkpoints.erase(std::unique(report.checkpoints.begin(), report.checkpoints.end()),
                                 report.checkpoints.end());
    }
    report.quotients = quotients_at(set, weight, report.checkpoints);

    BigInt start = BigInt(static_cast<unsigned long>(horizon)) * options.tail_fraction.get_num();
    mpz_cdiv_q(start.get_mpz_t(), start.get_mpz_t(), options.tail_fraction.get_den().get_mpz_t());
    report.tail_window_start = start.get_ui();

    bool first = true;
    for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
        if (report.checkpoints[i] < report.tail_window_start) continue;
        const Rational& q = report.quotients[i];
        if (first || q < report.lower_estimate) report.lower_estimate = q;
        if (first || q > report.upper_estimate) report.upper_estimate = q;
        first = false;
    }
    return report;
}

bool duality_check(const IndexSet& set, const WeightSeq& weight, std::uint64_t n) {
    Rational q = density_quotient(set, weight, n);
    Rational qc = density_quotient(set.complement(), weight, n);
    return q + qc == 1;
}

bool MonotonicityEstimates::chain_holds(const Rational& tol) const {
    return lower_b <= lower_a + tol && lower_a <= upper_a && upper_a <= upper_b + tol;
}

MonotonicityEstimates monotonicity_check(const IndexSet& set, const WeightSeq& a, const WeightSeq& b,
                                         std::uint64_t horizon, const EstimateOptions& options) {
    // a_n / 1 = a_n: non-increasing and null exactly when a is in the family.
    if (!std::holds_alternative<weights::Unit>(b.variant()))
        throw CertificateFailed("cannot certify a_n/b_n decreasing to 0 unless b is the unit weight");
    auto cert = a.family_certificate();
    if (!cert.in_family()) throw CertificateFailed("a is not in the family: " + cert.reason);

    auto ra = estimate_densities(set, a, horizon, options);
    auto rb = estimate_densities(set, b, horizon, options);
    return {rb.lower_estimate, ra.lower_estimate, ra.upper_estimate, rb.upper_estimate};
}

DropIndices ratio_drop_indices(const WeightSeq& weight, const Rational& alpha, std::uint64_t horizon) {
    if (alpha <= 0 || alpha >= 1) throw InvalidArgument("alpha must lie in (0, 1)");
    DropIndices out;
    Rational a0 = weight.value(0);
    Rational bound = a0;  // a_0 * alpha^{k-1}
    Rational current = a0;
    for (std::uint64_t n = 0; n < horizon; ++n) {
        Rational next = weight.value(n + 1);
        if (next <= alpha * current) {
            out.indices.push_back(n);
            if (current > bound) out.geometric_bound_holds = false;
            bound *= alpha;
        }
        current = std::move(next);
    }
    out.set = IndexSet::explicit_set(out.indices);
    return out;
}

ShiftGap shift_quotient_gap(const IndexSet& set, const WeightSeq& weight, const Rational& alpha, std::uint64_t n) {
    if (n == 0) throw InvalidArgument("shift gap needs N >= 1");
    auto drops = ratio_drop_indices(weight, alpha, n);
    Rational total = weight.prefix_sum(n);

    ShiftGap g;
    g.shifted_quotient = weight.sum_over_shifted(set, 0, n - 1) / total;
    g.quotient = weight.sum_over(set, 0, n) / total;
    g.drop_quotient = weight.sum_over(drops.set, 0, n) / total;
    g.boundary_term = 0;
    if (set.contains(n - 1) && !drops.set.contains(n - 1)) g.boundary_term = weight.value(n - 1) / total;
    g.gap = g.shifted_quotient - alpha * g.quotient + alpha * g.drop_quotient + alpha * g.boundary_term;
    return g;
}

}  // namespace hypodense
