#include "hypodense/ctype.hpp"

#include <algorithm>

namespace hypodense {

namespace {

std::uint64_t materialize_u64(const BigInt& z, const char* what) {
    if (sgn(z) < 0 || !z.fits_ulong_p()) throw ExponentOverflow(std::string(what) + " = " + to_string(z) + " does not fit a machine word");
    return z.get_ui();
}

// Adjacent runs with equal values are merged; empty runs dropped.
std::vector<WeightRun> normalized(const std::vector<WeightRun>& runs) {
    std::vector<WeightRun> out;
    for (const auto& r : runs) {
        if (r.begin >= r.end) continue;
        if (!out.empty() && out.back().end == r.begin && out.back().value == r.value) {
            out.back().end = r.end;
        } else {
            out.push_back(r);
        }
    }
    return out;
}

bool same_runs(const std::vector<WeightRun>& x, const std::vector<WeightRun>& y) {
    auto a = normalized(x), b = normalized(y);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].begin != b[i].begin || a[i].end != b[i].end || !(a[i].value == b[i].value)) return false;
    return true;
}

}  // namespace

Dyadic dyadic_pow(const Dyadic& x, std::uint64_t e) {
    if (e == 0) return Dyadic(1);
    if (x.is_zero()) return Dyadic(0);
    BigInt m;
    mpz_pow_ui(m.get_mpz_t(), x.mantissa().get_mpz_t(), static_cast<unsigned long>(e));
    if (e > static_cast<std::uint64_t>(INT64_MAX)) throw ExponentOverflow("power exponent too large");
    return Dyadic(m, checked_mul(x.exponent(), static_cast<std::int64_t>(e)));
}

std::vector<WeightRun> weight_table(std::uint64_t k, std::uint64_t n, std::uint64_t d, std::uint64_t Delta) {
    const Dyadic two(2), one(1), half = Dyadic::pow2(-1);
    const std::uint64_t t1 = k * d + 2 * n + 1;
    if (Delta <= (k + 3) * d + 4 * n + 2)
        throw InvalidArgument("block length " + std::to_string(Delta) + " too short for the weight table");
    const std::uint64_t t2 = Delta - 3 * d - 2 * n - 1;
    const std::uint64_t t3 = Delta - 2 * d;
    const std::uint64_t t4 = Delta - d;
    return normalized({{1, t1 + 1, two}, {t1 + 1, t2, one}, {t2, t3, half}, {t3, t4, two}, {t4, Delta, one}});
}

CTypeParams::CTypeParams(Schedule schedule, CTypeData data) : schedule_(std::move(schedule)), data_(std::move(data)) {}

CTypeParams CTypeParams::realize(const Schedule& schedule, std::uint64_t n_max) {
    if (n_max >= schedule.block_count())
        throw InvalidArgument("n_max = " + std::to_string(n_max) + " exceeds the " +
                              std::to_string(schedule.block_count()) + " blocks covered by the schedule");
    CTypeData d;
    d.b.push_back(0);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        std::uint64_t k = schedule.k_of_block(n);
        std::uint64_t len = materialize_u64(schedule.Delta.at(k), "Delta");
        std::uint64_t next;
        if (__builtin_add_overflow(d.b.back(), len, &next)) throw ExponentOverflow("b_n overflows a machine word");
        d.b.push_back(next);
        if (n == 0) {
            d.phi.push_back(0);
            d.v.emplace_back(1);
            d.w.push_back(normalized({{1, len, Dyadic(1)}}));
            continue;
        }
        std::uint64_t p2 = schedule.psi.psi2(k);
        d.phi.push_back(n - schedule.n[k]);
        const BigInt& tau = schedule.tau.at(p2);
        if (tau > exponent_cap()) throw ExponentOverflow("v_n = 2^-" + to_string(tau) + " exceeds the exponent cap");
        d.v.push_back(Dyadic::pow2(-to_int64(tau)));
        d.w.push_back(weight_table(k, n, materialize_u64(schedule.delta.at(p2), "delta"), len));
    }
    return from_data(schedule, std::move(d));
}

CTypeParams CTypeParams::from_data(const Schedule& schedule, CTypeData data) {
    CTypeParams p(schedule, std::move(data));
    p.validate();
    return p;
}

void CTypeParams::validate() {
    const auto& d = data_;
    const std::uint64_t N = d.phi.size();
    if (N == 0) throw ValidationError("at least one block", 0, "no blocks");
    if (d.b.size() != N + 1 || d.v.size() != N || d.w.size() != N)
        throw ValidationError("consistent sizes", 0, "b, phi, v, w disagree on the block count");
    if (N > schedule_.block_count())
        throw ValidationError("blocks within schedule", N - 1, "schedule covers fewer blocks");

    if (d.b[0] != 0) throw ValidationError("b_0 = 0", 0, "b_0 = " + std::to_string(d.b[0]));
    for (std::uint64_t n = 0; n < N; ++n)
        if (d.b[n + 1] <= d.b[n]) throw ValidationError("b strictly increasing", n, "b_{n+1} <= b_n");
    if (d.phi[0] != 0) throw ValidationError("phi(0) = 0", 0, "phi(0) = " + std::to_string(d.phi[0]));

    // Definition cases: [b_n, b_{n+1}-1) shifts forward, b_{n+1}-1 feeds back;
    // every index below b_N must land in exactly one.
    std::uint64_t covered = 0;
    for (std::uint64_t n = 0; n < N; ++n) covered += (d.b[n + 1] - 1 - d.b[n]) + 1;
    if (covered != d.b[N]) throw ValidationError("operator cases partition the indices", N, "coverage mismatch");

    block_product_.assign(N, Dyadic(1));
    block_product_inverse_.assign(N, Dyadic(1));

    for (std::uint64_t n = 0; n < N; ++n) {
        const std::uint64_t len = d.b[n + 1] - d.b[n];
        if (n >= 1) {
            if (d.phi[n] >= n) throw ValidationError("phi(n) < n", n, "phi = " + std::to_string(d.phi[n]));
            const std::uint64_t fl = d.b[d.phi[n] + 1] - d.b[d.phi[n]];
            if (len % (2 * fl) != 0)
                throw ValidationError("b_{n+1}-b_n multiple of 2(b_{phi(n)+1}-b_{phi(n)})", n,
                                      std::to_string(len) + " vs " + std::to_string(fl));
            if (d.v[n].is_zero()) throw ValidationError("v_n nonzero", n, "v_n = 0");
        }
        // Runs must tile [1, len).
        std::uint64_t at = 1;
        Dyadic prod(1);
        for (const auto& r : d.w[n]) {
            if (r.begin != at || r.end <= r.begin) throw ValidationError("weights tile the block", n, "gap or overlap");
            if (r.value.is_zero()) throw ValidationError("weights nonzero", n, "zero weight");
            prod *= dyadic_pow(r.value, r.end - r.begin);
            at = r.end;
        }
        if (at != len && !(len == 1 && d.w[n].empty()))
            throw ValidationError("weights tile the block", n, "runs end at " + std::to_string(at));
        if (prod.is_zero()) throw ValidationError("block products bounded below", n, "zero product");
        if (abs(prod.mantissa()) != 1) throw ValidationError("block product a power of two", n, prod.to_string());
        block_product_[n] = prod;
        block_product_inverse_[n] = Dyadic(BigInt(prod.mantissa()), -prod.exponent());

        // Consistency with the schedule.
        const std::uint64_t k = schedule_.k_of_block(n);
        if (len != materialize_u64(schedule_.Delta.at(k), "Delta"))
            throw ValidationError("b_{n+1}-b_n = Delta(k)", n, "length " + std::to_string(len));
        if (n == 0) {
            if (!same_runs(d.w[0], {{1, len, Dyadic(1)}})) throw ValidationError("block 0 weights are 1", 0, "");
            continue;
        }
        if (d.phi[n] != n - schedule_.n[k]) throw ValidationError("phi(n) = n - n_k", n, "");
        const std::uint64_t p2 = schedule_.psi.psi2(k);
        if (!(d.v[n] == Dyadic::pow2(-to_int64(schedule_.tau.at(p2)))))
            throw ValidationError("v_n = 2^-tau(psi2(k))", n, d.v[n].to_string());
        const std::uint64_t dp = materialize_u64(schedule_.delta.at(p2), "delta");
        if (!same_runs(d.w[n], weight_table(k, n, dp, len))) throw ValidationError("weight table", n, "");
        if (!(prod == Dyadic::pow2(checked_mul(static_cast<std::int64_t>(k), static_cast<std::int64_t>(dp)))))
            throw ValidationError("weight product = 2^{k delta(psi2(k))}", n, prod.to_string());
    }
}

std::uint64_t CTypeParams::block_of(std::uint64_t index) const {
    if (index >= support_end())
        throw SupportOutOfRange("index " + std::to_string(index) + " beyond the realized horizon " +
                                std::to_string(support_end()));
    auto it = std::upper_bound(data_.b.begin(), data_.b.end(), index);
    return static_cast<std::uint64_t>(it - data_.b.begin()) - 1;
}

Dyadic CTypeParams::w(std::uint64_t j) const {
    std::uint64_t n = block_of(j);
    std::uint64_t i = j - data_.b[n];
    if (i == 0) return Dyadic(1);  // never used by T
    const auto& runs = data_.w[n];
    auto it = std::upper_bound(runs.begin(), runs.end(), i, [](std::uint64_t x, const WeightRun& r) { return x < r.end; });
    return it->value;
}

Dyadic CTypeParams::weight_product(std::uint64_t lo, std::uint64_t hi) const {
    if (hi < lo) return Dyadic(1);
    std::uint64_t n = block_of(lo);
    if (block_of(hi) != n) throw InvalidArgument("weight product spans two blocks");
    std::uint64_t a = lo - data_.b[n], z = hi - data_.b[n] + 1;  // offsets [a, z)
    if (a == 0) a = 1;
    Dyadic p(1);
    for (const auto& r : data_.w[n]) {
        std::uint64_t s = std::max(a, r.begin), e = std::min(z, r.end);
        if (s < e) p *= dyadic_pow(r.value, e - s);
    }
    return p;
}

Dyadic CTypeParams::sup_abs_w() const {
    bool any = false;
    Dyadic best(1);
    for (const auto& runs : data_.w)
        for (const auto& r : runs) {
            Dyadic a = r.value.abs();
            if (!any || a > best) best = a;
            any = true;
        }
    return best;
}

Dyadic CTypeParams::inf_abs_w() const {
    bool any = false;
    Dyadic best(1);
    for (const auto& runs : data_.w)
        for (const auto& r : runs) {
            Dyadic a = r.value.abs();
            if (!any || a < best) best = a;
            any = true;
        }
    return best;
}

SparseVec CTypeParams::apply(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [k, c] : x.entries()) {
        std::uint64_t n = block_of(k);
        if (k + 1 < data_.b[n + 1]) {
            out.add(k + 1, c * w(k + 1));
        } else if (n >= 1) {
            out.add(data_.b[data_.phi[n]], c * data_.v[n]);
            out.add(data_.b[n], -(c * block_product_inverse_[n]));
        } else {
            out.add(0, -(c * block_product_inverse_[0]));
        }
    }
    return out;
}

SparseVec CTypeParams::apply_power(const SparseVec& x, std::uint64_t m) const {
    SparseVec y = x;
    for (std::uint64_t i = 0; i < m; ++i) y = apply(y);
    return y;
}

SparseVec CTypeParams::project_block(const SparseVec& x, std::uint64_t l) const {
    if (l > n_max()) throw SupportOutOfRange("block " + std::to_string(l) + " beyond the realized horizon");
    return x.restricted(data_.b[l], data_.b[l + 1]);
}

Dyadic CTypeParams::block_functional(const SparseVec& x, std::uint64_t l) const {
    Dyadic s(0);
    const std::uint64_t last = data_.b.at(l + 1) - 1;
    const SparseVec part = project_block(x, l);
    for (const auto& [k, c] : part.entries()) s += (weight_product(k + 1, last) * c).abs();
    return s;
}

std::uint64_t CTypeParams::phi_preimage_count(std::uint64_t l) const {
    return static_cast<std::uint64_t>(std::count(data_.phi.begin(), data_.phi.end(), l));
}

}  // namespace hypodense
