#include "hypodense/index_set.hpp"

#include <algorithm>
#include <limits>

#include "hypodense/errors.hpp"

namespace hypodense {

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    return __builtin_mul_overflow(a, b, &r) ? kMax : r;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<Interval> geometric_blocks_below(const sets::BlockUnion::Geometric& g, std::uint64_t n) {
    std::vector<Interval> out;
    std::uint64_t p = 1;
    for (std::uint64_t k = 0; k < g.first_k; ++k) p = sat_mul(p, g.base);
    while (true) {
        std::uint64_t lo = sat_mul(g.lo_mult, p);
        if (lo >= n || lo == kMax) break;
        out.push_back({lo, sat_mul(g.hi_mult, p)});
        p = sat_mul(p, g.base);
        if (p == kMax) break;
    }
    return out;
}

}  // namespace

IndexSet IndexSet::explicit_set(std::vector<std::uint64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return IndexSet(sets::Explicit{std::move(elements)});
}

IndexSet IndexSet::periodic(std::vector<std::uint64_t> residues, std::uint64_t modulus) {
    if (modulus == 0) throw InvalidArgument("periodic set needs a positive modulus");
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    for (auto r : residues)
        if (r >= modulus) throw InvalidArgument("residue " + std::to_string(r) + " >= modulus");
    return IndexSet(sets::Periodic{std::move(residues), modulus});
}

IndexSet IndexSet::block_union(std::vector<Interval> blocks) {
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (blocks[k].lo >= blocks[k].hi)
            throw InvalidArgument("block " + std::to_string(k) + " is empty or reversed");
        if (k > 0 && blocks[k - 1].hi > blocks[k].lo)
            throw InvalidArgument("blocks must be disjoint and increasing (block " + std::to_string(k) + ")");
    }
    return IndexSet(sets::BlockUnion{std::move(blocks), {}});
}

IndexSet IndexSet::geometric_blocks(std::uint64_t base, std::uint64_t lo_mult, std::uint64_t hi_mult,
                                    std::uint64_t first_k) {
    if (base < 2) throw InvalidArgument("geometric blocks need base >= 2");
    if (lo_mult == 0 || hi_mult <= lo_mult) throw InvalidArgument("geometric blocks need 0 < lo_mult < hi_mult");
    if (hi_mult > sat_mul(lo_mult, base))
        throw InvalidArgument("geometric blocks overlap: hi_mult > lo_mult * base");
    return IndexSet(sets::BlockUnion{{}, {{base, lo_mult, hi_mult, first_k}}});
}

IndexSet IndexSet::complement_of(const IndexSet& inner) {
    return IndexSet(sets::Complement{std::make_shared<const IndexSet>(inner)});
}

std::vector<Interval> IndexSet::blocks_below(std::uint64_t n) const {
    const auto* bu = std::get_if<sets::BlockUnion>(&v_);
    if (bu == nullptr) return {};
    if (!bu->geometric.empty()) return geometric_blocks_below(bu->geometric.front(), n);
    std::vector<Interval> out;
    for (const auto& b : bu->blocks) {
        if (b.lo >= n) break;
        out.push_back(b);
    }
    return out;
}

bool IndexSet::contains(std::uint64_t n) const {
    return std::visit(
        overloaded{
            [n](const sets::Explicit& e) { return std::binary_search(e.elements.begin(), e.elements.end(), n); },
            [n](const sets::Periodic& p) {
                return std::binary_search(p.residues.begin(), p.residues.end(), n % p.modulus);
            },
            [n, this](const sets::BlockUnion&) {
                for (const auto& b : blocks_below(n + 1))
                    if (b.lo <= n && n < b.hi) return true;
                return false;
            },
            [n](const sets::Complement& c) { return !c.inner->contains(n); },
        },
        v_);
}

std::uint64_t IndexSet::prefix_count(std::uint64_t n) const {
    return std::visit(
        overloaded{
            [n](const sets::Explicit& e) {
                return static_cast<std::uint64_t>(std::lower_bound(e.elements.begin(), e.elements.end(), n) -
                                                  e.elements.begin());
            },
            [n](const sets::Periodic& p) {
                std::uint64_t full = n / p.modulus;
                std::uint64_t rem = n % p.modulus;
                auto partial = static_cast<std::uint64_t>(
                    std::lower_bound(p.residues.begin(), p.residues.end(), rem) - p.residues.begin());
                return full * p.residues.size() + partial;
            },
            [n, this](const sets::BlockUnion&) {
                std::uint64_t c = 0;
                for (const auto& b : blocks_below(n)) c += std::min(b.hi, n) - b.lo;
                return c;
            },
            [n](const sets::Complement& c) { return n - c.inner->prefix_count(n); },
        },
        v_);
}

std::uint64_t IndexSet::count(std::uint64_t lo, std::uint64_t hi) const {
    if (hi <= lo) return 0;
    return prefix_count(hi) - prefix_count(lo);
}

std::vector<std::uint64_t> IndexSet::members(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> out;
    if (hi <= lo) return out;
    std::visit(
        overloaded{
            [&](const sets::Explicit& e) {
                auto it = std::lower_bound(e.elements.begin(), e.elements.end(), lo);
                for (; it != e.elements.end() && *it < hi; ++it) out.push_back(*it);
            },
            [&](const sets::Periodic& p) {
                if (p.residues.empty()) return;
                std::uint64_t base = lo - lo % p.modulus;
                for (; base < hi; base += p.modulus) {
                    for (auto r : p.residues) {
                        std::uint64_t m = base + r;
                        if (m >= hi) break;
                        if (m >= lo) out.push_back(m);
                    }
                }
            },
            [&](const sets::BlockUnion&) {
                for (const auto& b : blocks_below(hi)) {
                    for (std::uint64_t m = std::max(b.lo, lo); m < std::min(b.hi, hi); ++m) out.push_back(m);
                }
            },
            [&](const sets::Complement& c) {
                auto inner = c.inner->members(lo, hi);
                std::size_t i = 0;
                for (std::uint64_t m = lo; m < hi; ++m) {
                    if (i < inner.size() && inner[i] == m) {
                        ++i;
                        continue;
                    }
                    out.push_back(m);
                }
            },
        },
        v_);
    return out;
}

std::vector<std::uint64_t> IndexSet::transition_hints(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<std::uint64_t> out;
    auto keep = [&](std::uint64_t n) {
        if (n >= lo && n <= hi) out.push_back(n);
    };
    std::visit(overloaded{
                   [&](const sets::Explicit& e) {
                       for (auto m : e.elements) {
                           if (m > hi) break;
                           keep(m);
                           keep(m + 1);
                       }
                   },
                   [&](const sets::Periodic&) {},
                   [&](const sets::BlockUnion&) {
                       for (const auto& b : blocks_below(hi + 1)) {
                           keep(b.lo);
                           keep(b.hi);
                       }
                   },
                   [&](const sets::Complement& c) { out = c.inner->transition_hints(lo, hi); },
               },
               v_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string IndexSet::describe() const {
    return std::visit(
        overloaded{
            [](const sets::Explicit& e) { return "explicit(" + std::to_string(e.elements.size()) + " elements)"; },
            [](const sets::Periodic& p) {
                std::string s = "periodic{";
                for (std::size_t i = 0; i < p.residues.size(); ++i)
                    s += (i ? "," : "") + std::to_string(p.residues[i]);
                return s + "} mod " + std::to_string(p.modulus);
            },
            [](const sets::BlockUnion& b) {
                if (!b.geometric.empty()) {
                    const auto& g = b.geometric.front();
                    return "union_k [" + std::to_string(g.lo_mult) + "*" + std::to_string(g.base) + "^k, " +
                           std::to_string(g.hi_mult) + "*" + std::to_string(g.base) + "^k)";
                }
                return "block_union(" + std::to_string(b.blocks.size()) + " blocks)";
            },
            [](const sets::Complement& c) { return "complement(" + c.inner->describe() + ")"; },
        },
        v_);
}

}  // namespace hypodense
