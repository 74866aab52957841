#include "hypodense/weight_seq.hpp"

#include <algorithm>
#include <utility>

namespace hypodense {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Fraction {
    BigInt num;
    BigInt den;
};

// Balanced pairwise sum of term(first..last-1) without intermediate gcds.
template <class Term>
Fraction tree_sum(std::size_t first, std::size_t last, const Term& term) {
    if (last - first <= 8) {
        Fraction acc{BigInt(0), BigInt(1)};
        for (std::size_t i = first; i < last; ++i) {
            Fraction t = term(i);
            acc.num = acc.num * t.den + t.num * acc.den;
            acc.den *= t.den;
        }
        return acc;
    }
    std::size_t mid = first + (last - first) / 2;
    Fraction a = tree_sum(first, mid, term);
    Fraction b = tree_sum(mid, last, term);
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

template <class Term>
Rational reduced_tree_sum(std::size_t count, const Term& term) {
    if (count == 0) return Rational(0);
    Fraction f = tree_sum(0, count, term);
    return make_rational(f.num, f.den);
}

Rational harmonic_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t offset) {
    if (hi <= lo) return Rational(0);
    return reduced_tree_sum(hi - lo, [lo, offset](std::size_t i) {
        return Fraction{BigInt(1), BigInt(static_cast<unsigned long>(lo + i + offset))};
    });
}

Rational sum_values(const std::vector<Rational>& values) {
    return reduced_tree_sum(values.size(), [&values](std::size_t i) {
        return Fraction{values[i].get_num(), values[i].get_den()};
    });
}

bool is_full_set(const IndexSet& set) {
    const auto* p = std::get_if<sets::Periodic>(&set.variant());
    return p != nullptr && p->residues.size() == p->modulus;
}

}  // namespace

Rational sum_unit_fractions(const std::vector<std::uint64_t>& denominators) {
    return reduced_tree_sum(denominators.size(), [&denominators](std::size_t i) {
        return Fraction{BigInt(1), BigInt(static_cast<unsigned long>(denominators[i]))};
    });
}

WeightSeq WeightSeq::block_constant(std::vector<std::uint64_t> breakpoints, std::uint64_t tail_mult,
                                    std::uint64_t tail_add) {
    if (breakpoints.size() < 2) throw InvalidArgument("block-constant weight needs at least one block");
    if (breakpoints.front() != 0) throw InvalidArgument("block-constant breakpoints must start at 0");
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
        if (breakpoints[k] <= breakpoints[k - 1])
            throw InvalidArgument("block-constant breakpoints must be strictly increasing");
    if (tail_mult == 0) throw InvalidArgument("tail multiplier must be positive");
    return WeightSeq(weights::BlockConstant{std::move(breakpoints), tail_mult, tail_add});
}

WeightSeq WeightSeq::table(std::vector<Rational> prefix, const WeightSeq& tail) {
    for (const auto& q : prefix)
        if (sgn(q) <= 0) throw InvalidArgument("table weights must be strictly positive");
    return WeightSeq(weights::Table{std::move(prefix), std::make_shared<const WeightSeq>(tail)});
}

std::vector<Interval> WeightSeq::blocks_below(std::uint64_t n) const {
    const auto* bc = std::get_if<weights::BlockConstant>(&v_);
    if (bc == nullptr) return {};
    std::vector<Interval> out;
    const auto& bp = bc->breakpoints;
    for (std::size_t k = 0; k + 1 < bp.size() && bp[k] < n; ++k) out.push_back({bp[k], bp[k + 1]});
    std::uint64_t start = bp.back();
    std::uint64_t len = bp.back() - bp[bp.size() - 2];
    while (start < n) {
        len = len * bc->tail_mult + bc->tail_add;
        out.push_back({start, start + len});
        start += len;
    }
    return out;
}

Rational WeightSeq::value(std::uint64_t n) const {
    return std::visit(overloaded{
                          [](const weights::Unit&) { return Rational(1); },
                          [n](const weights::Harmonic&) {
                              return Rational(BigInt(1), BigInt(static_cast<unsigned long>(n + 1)));
                          },
                          [n, this](const weights::BlockConstant&) {
                              auto b = blocks_below(n + 1).back();
                              return Rational(BigInt(1), BigInt(static_cast<unsigned long>(b.hi - b.lo)));
                          },
                          [n](const weights::Table& t) {
                              return n < t.prefix.size() ? t.prefix[n] : t.tail->value(n);
                          },
                      },
                      v_);
}

Rational WeightSeq::sum_range(std::uint64_t lo, std::uint64_t hi) const {
    return sum_over(IndexSet::all(), lo, hi);
}

Rational WeightSeq::sum_over(const IndexSet& set, std::uint64_t lo, std::uint64_t hi) const {
    if (hi <= lo) return Rational(0);
    return std::visit(
        overloaded{
            [&](const weights::Unit&) { return Rational(BigInt(static_cast<unsigned long>(set.count(lo, hi)))); },
            [&](const weights::Harmonic&) {
                if (is_full_set(set)) return harmonic_range(lo, hi, 1);
                auto m = set.members(lo, hi);
                for (auto& d : m) d += 1;
                return sum_unit_fractions(m);
            },
            [&](const weights::BlockConstant&) {
                Rational acc(0);
                for (const auto& b : blocks_below(hi)) {
                    std::uint64_t s = std::max(b.lo, lo), e = std::min(b.hi, hi);
                    if (s >= e) continue;
                    std::uint64_t c = set.count(s, e);
                    if (c != 0)
                        acc += Rational(BigInt(static_cast<unsigned long>(c)),
                                        BigInt(static_cast<unsigned long>(b.hi - b.lo)));
                }
                acc.canonicalize();
                return acc;
            },
            [&](const weights::Table& t) {
                std::uint64_t p = t.prefix.size();
                Rational acc(0);
                if (lo < p) {
                    std::vector<Rational> vals;
                    for (auto m : set.members(lo, std::min(hi, p))) vals.push_back(t.prefix[m]);
                    acc += sum_values(vals);
                }
                if (hi > p) acc += t.tail->sum_over(set, std::max(lo, p), hi);
                return acc;
            },
        },
        v_);
}

Rational WeightSeq::sum_over_shifted(const IndexSet& set, std::uint64_t lo, std::uint64_t hi) const {
    if (hi <= lo) return Rational(0);
    return std::visit(overloaded{
                          [&](const weights::Unit&) {
                              return Rational(BigInt(static_cast<unsigned long>(set.count(lo, hi))));
                          },
                          [&](const weights::Harmonic&) {
                              if (is_full_set(set)) return harmonic_range(lo, hi, 2);
                              auto m = set.members(lo, hi);
                              for (auto& d : m) d += 2;
                              return sum_unit_fractions(m);
                          },
                          [&](const weights::BlockConstant&) {
                              // a_{n+1} lives in the block containing n+1.
                              Rational acc(0);
                              for (const auto& b : blocks_below(hi + 1)) {
                                  std::uint64_t s = std::max(b.lo == 0 ? 0 : b.lo - 1, lo);
                                  std::uint64_t e = std::min(b.hi - 1, hi);
                                  if (s >= e) continue;
                                  std::uint64_t c = set.count(s, e);
                                  if (c != 0)
                                      acc += Rational(BigInt(static_cast<unsigned long>(c)),
                                                      BigInt(static_cast<unsigned long>(b.hi - b.lo)));
                              }
                              acc.canonicalize();
                              return acc;
                          },
                          [&](const weights::Table&) {
                              std::vector<Rational> vals;
                              for (auto m : set.members(lo, hi)) vals.push_back(value(m + 1));
                              return sum_values(vals);
                          },
                      },
                      v_);
}

FamilyCertificate WeightSeq::family_certificate() const {
    return std::visit(
        overloaded{
            [](const weights::Unit&) {
                return FamilyCertificate{true, true, false, true, "constant weight does not tend to 0"};
            },
            [](const weights::Harmonic&) { return FamilyCertificate{true, true, true, true, "harmonic"}; },
            [](const weights::BlockConstant& b) {
                FamilyCertificate c{true, true, true, true, "block lengths non-decreasing and unbounded"};
                for (std::size_t k = 2; k < b.breakpoints.size(); ++k) {
                    if (b.breakpoints[k] - b.breakpoints[k - 1] < b.breakpoints[k - 1] - b.breakpoints[k - 2]) {
                        c.non_increasing = false;
                        c.reason = "block " + std::to_string(k - 1) + " is shorter than its predecessor";
                    }
                }
                if (b.tail_mult == 1 && b.tail_add == 0) {
                    c.tends_to_zero = false;
                    c.reason = "tail block lengths are bounded";
                }
                return c;
            },
            [](const weights::Table& t) {
                FamilyCertificate c = t.tail->family_certificate();
                for (std::size_t n = 0; n < t.prefix.size(); ++n) {
                    Rational next = n + 1 < t.prefix.size() ? t.prefix[n + 1] : t.tail->value(n + 1);
                    if (next > t.prefix[n]) {
                        c.non_increasing = false;
                        c.reason = "table increases at index " + std::to_string(n);
                    }
                }
                return c;
            },
        },
        v_);
}

std::string WeightSeq::describe() const {
    return std::visit(overloaded{
                          [](const weights::Unit&) { return std::string("unit"); },
                          [](const weights::Harmonic&) { return std::string("harmonic"); },
                          [](const weights::BlockConstant& b) {
                              return "block_constant(" + std::to_string(b.breakpoints.size() - 1) +
                                     " explicit blocks, tail x" + std::to_string(b.tail_mult) + "+" +
                                     std::to_string(b.tail_add) + ")";
                          },
                          [](const weights::Table& t) {
                              return "table(" + std::to_string(t.prefix.size()) + " values, then " +
                                     t.tail->describe() + ")";
                          },
                      },
                      v_);
}

}  // namespace hypodense
