#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's operator or density code: weights are re-derived from the
// schedule numbers, vectors are plain maps of rationals, sums are loops.

#include <cstdint>
#include <map>
#include <vector>

#include "hypodense/index_set.hpp"
#include "hypodense/schedule.hpp"
#include "hypodense/sparse_vec.hpp"
#include "hypodense/weight_seq.hpp"

namespace oracle {

using hypodense::BigInt;
using hypodense::Rational;
using Vec = std::map<std::uint64_t, Rational>;

inline Rational pow2q(long e) {
    Rational r(1);
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(-e));
    }
    return r;
}

struct Op {
    const hypodense::Schedule& s;
    std::vector<std::uint64_t> b;  // b_0..b_{N}
    std::vector<std::uint64_t> kb;  // k of each block

    Op(const hypodense::Schedule& sched, std::uint64_t blocks) : s(sched) {
        b.push_back(0);
        for (std::uint64_t n = 0; n < blocks; ++n) {
            std::uint64_t k = 0;
            if (n >= 1)
                for (std::uint64_t kk = 1; kk + 1 < s.n.size(); ++kk)
                    if (s.n[kk] <= n && n < s.n[kk + 1]) k = kk;
            kb.push_back(k);
            b.push_back(b.back() + s.Delta[k].get_ui());
        }
    }

    std::uint64_t block(std::uint64_t j) const {
        std::uint64_t n = 0;
        while (b[n + 1] <= j) ++n;
        return n;
    }

    Rational w(std::uint64_t j) const {
        const std::uint64_t n = block(j), i = j - b[n];
        if (n == 0 || i == 0) return 1;
        const std::uint64_t k = kb[n], d = s.delta[s.psi.psi2(k)].get_ui(), D = s.Delta[k].get_ui();
        if (i <= k * d + 2 * n + 1) return 2;
        if (i < D - 3 * d - 2 * n - 1) return 1;
        if (i < D - 2 * d) return Rational(1, 2);
        if (i < D - d) return 2;
        return 1;
    }

    Rational inner_product(std::uint64_t n) const {
        Rational p(1);
        for (std::uint64_t j = b[n] + 1; j < b[n + 1]; ++j) p *= w(j);
        return p;
    }

    Vec apply(const Vec& x) const {
        Vec y;
        auto add = [&](std::uint64_t i, const Rational& c) {
            y[i] += c;
            if (y[i] == 0) y.erase(i);
        };
        for (const auto& [k, c] : x) {
            const std::uint64_t n = block(k);
            if (k + 1 < b[n + 1]) {
                add(k + 1, c * w(k + 1));
                continue;
            }
            if (n >= 1) {
                const std::uint64_t kk = kb[n];
                const std::uint64_t phi = n - s.n[kk];
                add(b[phi], c * pow2q(-s.tau[s.psi.psi2(kk)].get_si()));
            }
            add(b[n], -c / inner_product(n));
        }
        return y;
    }
};

inline Vec from_sparse(const hypodense::SparseVec& x) {
    Vec v;
    for (const auto& [i, c] : x.entries()) v[i] = c.to_rational();
    return v;
}

inline Rational l1(const Vec& x) {
    Rational s(0);
    for (const auto& [i, c] : x) s += abs(c);
    return s;
}

inline Vec minus(Vec x, const Vec& y) {
    for (const auto& [i, c] : y) {
        x[i] -= c;
        if (x[i] == 0) x.erase(i);
    }
    return x;
}

// Σ_{n ∈ I, n < N} a_n / Σ_{n < N} a_n by direct summation.
inline Rational quotient(const hypodense::IndexSet& set, const hypodense::WeightSeq& a, std::uint64_t N) {
    Rational num(0), den(0);
    for (std::uint64_t n = 0; n < N; ++n) {
        Rational v = a.value(n);
        den += v;
        if (set.contains(n)) num += v;
    }
    return num / den;
}

}  // namespace oracle
