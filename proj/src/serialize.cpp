#include "hypodense/serialize.hpp"

#include <cstdio>
#include <set>

namespace hypodense {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& what) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + what);
}

std::uint64_t u64(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key)) throw ConfigError(what + ": missing '" + key + "'");
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw ConfigError(what + ": '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

std::uint64_t u64_or(const json& j, const char* key, std::uint64_t fallback, const std::string& what) {
    return j.contains(key) ? u64(j, key, what) : fallback;
}

std::vector<std::uint64_t> u64_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw ConfigError(what + " must be an array");
    std::vector<std::uint64_t> out;
    for (const auto& e : j) {
        if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<std::int64_t>() >= 0))
            throw ConfigError(what + " must hold non-negative integers");
        out.push_back(e.get<std::uint64_t>());
    }
    return out;
}

Rational rational_of(const json& j, const std::string& what) {
    if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ConfigError(what + " must be an integer or a \"p/q\" string");
}

json rat(const Rational& q) { return to_string(q); }

json big(const BigInt& z) { return to_string(z); }

template <class F>
auto wrap_invalid(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

std::string display(const Rational& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", to_display(q));
    return buf;
}

IndexSet index_set_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "evens") return IndexSet::evens();
        if (s == "odds") return IndexSet::odds();
        if (s == "all") return IndexSet::all();
        if (s == "empty") return IndexSet::empty();
        throw ConfigError("unknown set '" + s + "'");
    }
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError("set must be a name or an object with a 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    return wrap_invalid([&] {
        if (kind == "explicit") {
            require_keys(j, {"kind", "elements"}, "explicit set");
            return IndexSet::explicit_set(u64_list(j.at("elements"), "elements"));
        }
        if (kind == "periodic") {
            require_keys(j, {"kind", "residues", "modulus"}, "periodic set");
            return IndexSet::periodic(u64_list(j.at("residues"), "residues"), u64(j, "modulus", "periodic set"));
        }
        if (kind == "blocks") {
            require_keys(j, {"kind", "blocks"}, "block set");
            std::vector<Interval> blocks;
            for (const auto& b : j.at("blocks")) {
                auto v = u64_list(b, "block");
                if (v.size() != 2) throw ConfigError("block must be [lo, hi]");
                blocks.push_back({v[0], v[1]});
            }
            return IndexSet::block_union(std::move(blocks));
        }
        if (kind == "geometric") {
            require_keys(j, {"kind", "base", "lo_mult", "hi_mult", "first_k"}, "geometric set");
            return IndexSet::geometric_blocks(u64(j, "base", "geometric set"), u64(j, "lo_mult", "geometric set"),
                                              u64(j, "hi_mult", "geometric set"),
                                              u64_or(j, "first_k", 0, "geometric set"));
        }
        if (kind == "complement") {
            require_keys(j, {"kind", "of"}, "complement set");
            if (!j.contains("of")) throw ConfigError("complement set: missing 'of'");
            return IndexSet::complement_of(index_set_from_json(j.at("of")));
        }
        throw ConfigError("unknown set kind '" + kind + "'");
    });
}

json to_json(const IndexSet& set) {
    return std::visit(
        [](const auto& v) -> json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, sets::Explicit>) {
                return {{"kind", "explicit"}, {"elements", v.elements}};
            } else if constexpr (std::is_same_v<V, sets::Periodic>) {
                return {{"kind", "periodic"}, {"residues", v.residues}, {"modulus", v.modulus}};
            } else if constexpr (std::is_same_v<V, sets::BlockUnion>) {
                if (!v.geometric.empty()) {
                    const auto& g = v.geometric.front();
                    return {{"kind", "geometric"},
                            {"base", g.base},
                            {"lo_mult", g.lo_mult},
                            {"hi_mult", g.hi_mult},
                            {"first_k", g.first_k}};
                }
                json blocks = json::array();
                for (const auto& b : v.blocks) blocks.push_back({b.lo, b.hi});
                return {{"kind", "blocks"}, {"blocks", blocks}};
            } else {
                return {{"kind", "complement"}, {"of", to_json(*v.inner)}};
            }
        },
        set.variant());
}

WeightSeq weight_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "unit") return WeightSeq::unit();
        if (s == "harmonic") return WeightSeq::harmonic();
        throw ConfigError("unknown weight '" + s + "'");
    }
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError("weight must be a name or an object with a 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    return wrap_invalid([&] {
        if (kind == "block_constant") {
            require_keys(j, {"kind", "breakpoints", "tail_mult", "tail_add"}, "block_constant weight");
            if (!j.contains("breakpoints")) throw ConfigError("block_constant weight: missing 'breakpoints'");
            return WeightSeq::block_constant(u64_list(j.at("breakpoints"), "breakpoints"),
                                             u64_or(j, "tail_mult", 2, "block_constant weight"),
                                             u64_or(j, "tail_add", 0, "block_constant weight"));
        }
        if (kind == "table") {
            require_keys(j, {"kind", "prefix", "tail"}, "table weight");
            if (!j.contains("prefix") || !j.at("prefix").is_array()) throw ConfigError("table weight: 'prefix' array");
            std::vector<Rational> prefix;
            for (const auto& e : j.at("prefix")) prefix.push_back(rational_of(e, "table entry"));
            return WeightSeq::table(std::move(prefix), weight_from_json(j.value("tail", json("unit"))));
        }
        throw ConfigError("unknown weight kind '" + kind + "'");
    });
}

json to_json(const WeightSeq& weight) {
    return std::visit(
        [](const auto& v) -> json {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, weights::Unit>) {
                return "unit";
            } else if constexpr (std::is_same_v<V, weights::Harmonic>) {
                return "harmonic";
            } else if constexpr (std::is_same_v<V, weights::BlockConstant>) {
                return {{"kind", "block_constant"},
                        {"breakpoints", v.breakpoints},
                        {"tail_mult", v.tail_mult},
                        {"tail_add", v.tail_add}};
            } else {
                json prefix = json::array();
                for (const auto& q : v.prefix) prefix.push_back(rat(q));
                return {{"kind", "table"}, {"prefix", prefix}, {"tail", to_json(*v.tail)}};
            }
        },
        weight.variant());
}

SparseVec sparse_vec_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("vector must be an object {\"index\": value}");
    SparseVec x;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::uint64_t idx;
        try {
            std::size_t pos = 0;
            idx = std::stoull(it.key(), &pos);
            if (pos != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("vector index '" + it.key() + "' is not a natural number");
        }
        const auto& v = it.value();
        if (v.is_number_integer()) {
            x.add(idx, Dyadic(v.get<std::int64_t>()));
        } else if (v.is_string()) {
            try {
                x.add(idx, Dyadic::parse(v.get<std::string>()));
            } catch (const Error& e) {
                throw ConfigError(std::string("vector entry: ") + e.what());
            }
        } else {
            throw ConfigError("vector entries must be integers or \"m*2^e\" strings");
        }
    }
    return x;
}

json to_json(const SparseVec& x) {
    json out = json::object();
    for (const auto& [i, c] : x.entries()) out[std::to_string(i)] = c.to_string();
    return out;
}

json to_json(const DensityReport& r) {
    json rows = json::array();
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i)
        rows.push_back({{"N", r.checkpoints[i]}, {"Q", rat(r.quotients[i])}});
    return {{"horizon", r.horizon},
            {"tail_window_start", r.tail_window_start},
            {"lower_estimate", rat(r.lower_estimate)},
            {"lower_display", display(r.lower_estimate)},
            {"upper_estimate", rat(r.upper_estimate)},
            {"upper_display", display(r.upper_estimate)},
            {"checkpoints", rows}};
}

json to_json(const BlockPlan& plan) {
    json floors = json::array(), dens = json::array();
    for (const auto& q : plan.floors) floors.push_back(rat(q));
    for (const auto& q : plan.block_densities) dens.push_back(rat(q));
    json out = {{"horizon", plan.horizon}, {"breakpoints", plan.breakpoints}, {"floors", floors},
                {"block_densities", dens}};
    if (!plan.set_of_block.empty()) out["set_of_block"] = plan.set_of_block;
    return out;
}

json to_json(const Schedule& s) {
    json psi = json::array();
    for (std::uint64_t k = 1; k <= s.k_max; ++k) psi.push_back({s.psi.psi1(k), s.psi.psi2(k)});
    json delta = json::array(), tau = json::array(), Delta = json::array(), gamma = json::array();
    for (const auto& z : s.delta) delta.push_back(big(z));
    for (const auto& z : s.tau) tau.push_back(big(z));
    for (const auto& z : s.Delta) Delta.push_back(big(z));
    for (std::uint64_t k = 1; k <= s.d_max(); ++k) gamma.push_back(s.gamma(k).to_string());
    return {{"mode", s.mode == ScheduleMode::structural ? "structural" : "asymptotic"},
            {"k_max", s.k_max},
            {"psi", psi},
            {"n", s.n},
            {"delta", delta},
            {"tau", tau},
            {"Delta", Delta},
            {"gamma", gamma}};
}

json to_json(const std::vector<ScheduleCheck>& checks) {
    json out = json::array();
    for (const auto& c : checks) {
        json row = {{"name", c.name}, {"holds", c.holds}};
        if (!c.holds) row["first_failure"] = c.first_failure;
        out.push_back(row);
    }
    return out;
}

json summary_json(const CTypeParams& params) {
    json blocks = json::array();
    for (std::uint64_t n = 0; n <= params.n_max(); ++n) {
        json runs = json::array();
        for (const auto& r : params.data().w[n]) runs.push_back({r.begin, r.end, r.value.to_string()});
        blocks.push_back({{"n", n},
                          {"b", params.b(n)},
                          {"length", params.block_length(n)},
                          {"phi", params.phi(n)},
                          {"v", params.v(n).to_string()},
                          {"block_product", params.block_product(n).to_string()},
                          {"weights", runs}});
    }
    return {{"support_end", params.support_end()}, {"blocks", blocks}};
}

json to_json(const ShadowingCertificate& c) {
    json eq9 = json::array();
    for (const auto& d : c.eq9_values) eq9.push_back(d.to_string());
    return {{"x", to_json(c.x)},
            {"epsilon", rat(c.epsilon)},
            {"k0", c.k0},
            {"K", c.K},
            {"k", c.k},
            {"n", c.n},
            {"window", c.window},
            {"z", to_json(c.z)},
            {"norm_z", c.norm_z.to_string()},
            {"max_orbit_error", c.max_orbit_error.to_string()},
            {"eq9_target", c.eq9_target.to_string()},
            {"eq9_values", eq9},
            {"eq9_holds", c.eq9_holds},
            {"eq10_holds", c.eq10_holds},
            {"norm_ok", c.norm_ok},
            {"orbit_ok", c.orbit_ok},
            {"holds", c.holds()}};
}

json to_json(const Prop51Result& r) {
    return {{"K0", r.K0},         {"K1", r.K1},           {"alpha", r.alpha.to_string()},
            {"J", r.J},           {"hits", r.hits},       {"frequency", rat(r.frequency)},
            {"bound", rat(r.bound)}, {"holds", r.holds}};
}

json to_json(const HittingReport& h) {
    return {{"x", to_json(h.x)},
            {"center", to_json(h.ball.center)},
            {"radius", rat(h.ball.radius)},
            {"step_horizon", h.step_horizon},
            {"center_period", h.center_period},
            {"visits", h.visits},
            {"density", to_json(h.density)}};
}

json to_json(const IdentityReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"vector", row.vector},
                        {"ball", row.ball},
                        {"weight", row.weight_name},
                        {"certified", row.certified},
                        {"lower_unit", rat(row.lower_unit)},
                        {"upper_unit", rat(row.upper_unit)},
                        {"lower_a", rat(row.lower_a)},
                        {"upper_a", rat(row.upper_a)},
                        {"chain_holds", row.chain_holds}});
    return {{"rows", rows}, {"all_hold", r.all_hold}, {"scope", r.scope_note}};
}

void write_density_csv(std::ostream& out, const DensityReport& r) {
    out << "N,Q_numerator,Q_denominator,Q_float_display\n";
    for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
        const auto& q = r.quotients[i];
        out << r.checkpoints[i] << ',' << to_string(BigInt(q.get_num())) << ',' << to_string(BigInt(q.get_den()))
            << ',' << display(q) << '\n';
    }
}

void write_orbit_csv(std::ostream& out, const CTypeParams& params, const SparseVec& x, std::uint64_t steps) {
    out << "step,index,mantissa,exponent\n";
    SparseVec y = x;
    for (std::uint64_t m = 0; m <= steps; ++m) {
        for (const auto& [i, c] : y.entries())
            out << m << ',' << i << ',' << to_string(c.mantissa()) << ',' << c.exponent() << '\n';
        if (m < steps) y = params.apply(y);
    }
}

}  // namespace hypodense
