#include "hypodense/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "hypodense/verify.hpp"

namespace hypodense {

namespace {

struct CommandSpec {
    std::vector<std::string> keys;
    Emit default_emit;
    std::set<Emit> emits;
    std::string help;
};

const std::map<std::string, CommandSpec>& commands() {
    static const std::map<std::string, CommandSpec> c{
        {"density",
         {{"set", "weight", "horizon", "tail_fraction", "grid_ratio"}, Emit::csv, {Emit::csv, Emit::json},
          "weighted prefix densities of a set"}},
        {"forge",
         {{"method", "set", "delta", "sets", "deltas", "modulus", "horizon", "scan_factor"}, Emit::json, {Emit::json},
          "synthesize a weight raising a lower density"}},
        {"schedule", {{"schedule"}, Emit::json, {Emit::json}, "build a schedule and check its conditions"}},
        {"orbit", {{"schedule", "x", "steps"}, Emit::csv, {Emit::csv, Emit::json}, "iterate T on a vector"}},
        {"shadow",
         {{"schedule", "x", "epsilon", "weight", "alpha_max"}, Emit::json, {Emit::json},
          "build and certify a shadowing vector"}},
        {"prop50", {{"schedule", "x", "l", "n", "j_max", "C"}, Emit::json, {Emit::json}, "block propagation bounds"}},
        {"prop51", {{"schedule", "x", "l", "J", "K0", "K1"}, Emit::json, {Emit::json}, "in-block return frequency"}},
        {"hits",
         {{"schedule", "x", "center", "radius", "step_horizon", "weight"}, Emit::json, {Emit::json, Emit::csv},
          "hitting set of a ball and its densities"}},
        {"identity",
         {{"schedule", "vectors", "weights", "balls", "step_horizon", "tol"}, Emit::json, {Emit::json},
          "finite-family density chain"}},
        {"verify", {{"suite", "mode", "seed", "trials"}, Emit::text, {Emit::text, Emit::json}, "invariant suites"}},
    };
    return c;
}

Emit parse_emit(const std::string& s) {
    if (s == "json") return Emit::json;
    if (s == "csv") return Emit::csv;
    if (s == "text") return Emit::text;
    throw ConfigError("unknown emit format '" + s + "'");
}

// Params accessor: every read is checked, every key was whitelisted.
class Params {
public:
    Params(const json& j, const std::string& cmd) : j_(j), cmd_(cmd) {
        if (!j.is_object()) throw ConfigError(cmd + ": params must be an object");
        const auto& allowed = commands().at(cmd).keys;
        for (auto it = j.begin(); it != j.end(); ++it)
            if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
                throw ConfigError(cmd + ": unknown key '" + it.key() + "'");
    }

    bool has(const char* k) const { return j_.contains(k); }
    const json& at(const char* k) const {
        if (!has(k)) throw ConfigError(cmd_ + ": missing '" + k + "'");
        return j_.at(k);
    }
    json get_or(const char* k, json fallback) const { return has(k) ? j_.at(k) : fallback; }

    std::uint64_t u64(const char* k) const {
        const auto& v = at(k);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
        throw ConfigError(cmd_ + ": '" + k + "' must be a non-negative integer");
    }
    std::uint64_t u64_or(const char* k, std::uint64_t fallback) const { return has(k) ? u64(k) : fallback; }

    Rational rational(const char* k) const { return rational_of(at(k), k); }
    Rational rational_or(const char* k, const Rational& fallback) const { return has(k) ? rational(k) : fallback; }

    std::string str_or(const char* k, const std::string& fallback) const {
        if (!has(k)) return fallback;
        if (!at(k).is_string()) throw ConfigError(cmd_ + ": '" + k + "' must be a string");
        return at(k).get<std::string>();
    }

    Rational rational_of(const json& v, const std::string& what) const {
        try {
            if (v.is_number_integer()) return make_rational(v.get<std::int64_t>());
            if (v.is_string()) return parse_rational(v.get<std::string>());
        } catch (const Error& e) {
            throw ConfigError(cmd_ + ": '" + what + "': " + e.what());
        }
        throw ConfigError(cmd_ + ": '" + what + "' must be an integer or \"p/q\"");
    }

private:
    const json& j_;
    std::string cmd_;
};

// Presets name the toy parameter sets; objects spell a schedule out.
Schedule schedule_from_spec(const json& spec, std::optional<std::uint64_t>* n_max) {
    if (spec.is_string()) {
        const auto s = spec.get<std::string>();
        if (s == "structural") return toys::structural_schedule();
        if (s == "shadow") return toys::shadow_schedule();
        if (s == "prop") return toys::prop_schedule();
        if (s == "asymptotic") return toys::asymptotic_schedule();
        throw ConfigError("unknown schedule preset '" + s + "'");
    }
    if (!spec.is_object()) throw ConfigError("schedule must be a preset name or an object");
    static const std::set<std::string> keys{"mode",  "i_max", "j_max",  "multiplicity", "psi_horizon", "k_max",
                                            "delta0", "tau0", "Delta0", "Delta_scale",  "n_max"};
    for (auto it = spec.begin(); it != spec.end(); ++it)
        if (!keys.count(it.key())) throw ConfigError("schedule: unknown key '" + it.key() + "'");
    auto u = [&](const char* k, std::uint64_t fallback) -> std::uint64_t {
        if (!spec.contains(k)) return fallback;
        const auto& v = spec.at(k);
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            throw ConfigError(std::string("schedule: '") + k + "' must be a non-negative integer");
        return v.get<std::uint64_t>();
    };
    auto bigk = [&](const char* k, long fallback) -> BigInt {
        if (!spec.contains(k)) return BigInt(fallback);
        const auto& v = spec.at(k);
        try {
            if (v.is_number_integer()) return BigInt(static_cast<long>(v.get<std::int64_t>()));
            if (v.is_string()) return parse_bigint(v.get<std::string>());
        } catch (const Error& e) {
            throw ConfigError(std::string("schedule: '") + k + "': " + e.what());
        }
        throw ConfigError(std::string("schedule: '") + k + "' must be an integer");
    };
    const std::string mode = spec.value("mode", std::string("structural"));
    if (mode != "structural" && mode != "asymptotic") throw ConfigError("schedule: unknown mode '" + mode + "'");
    const std::uint64_t k_max = u("k_max", 4);
    ScheduleSeeds seeds;
    seeds.delta0 = bigk("delta0", 1);
    seeds.tau0 = bigk("tau0", 1);
    seeds.Delta0 = bigk("Delta0", 2);
    seeds.Delta_scale = u("Delta_scale", 1);
    if (n_max && spec.contains("n_max")) *n_max = u("n_max", 0);
    try {
        auto psi = PsiMap::build(u("i_max", 2), u("j_max", 3), u("multiplicity", 1), u("psi_horizon", 4 * k_max + 20));
        return build_schedule(mode == "structural" ? ScheduleMode::structural : ScheduleMode::asymptotic, psi, k_max,
                              seeds);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
    }
}

CTypeParams realize_spec(const json& spec) {
    std::optional<std::uint64_t> n_max;
    auto s = schedule_from_spec(spec, &n_max);
    try {
        return CTypeParams::realize(s, n_max.value_or(s.block_count() - 1));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
    }
}

SparseVec vec(const json& j) { return sparse_vec_from_json(j); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CommandResult run_density(const Params& p, Emit emit) {
    auto set = index_set_from_json(p.at("set"));
    auto w = weight_from_json(p.get_or("weight", "unit"));
    EstimateOptions opt;
    opt.tail_fraction = p.rational_or("tail_fraction", opt.tail_fraction);
    opt.grid_ratio = p.rational_or("grid_ratio", opt.grid_ratio);
    DensityReport r;
    try {
        r = estimate_densities(set, w, p.u64("horizon"), opt);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (emit == Emit::csv) {
        std::ostringstream os;
        write_density_csv(os, r);
        return {os.str(), true};
    }
    json doc = {{"set", to_json(set)}, {"weight", to_json(w)}, {"report", to_json(r)}};
    return {dump(doc), true};
}

CommandResult run_forge(const Params& p) {
    const std::string method = p.str_or("method", "thm1");
    const std::uint64_t horizon = p.u64("horizon");
    ForgeOptions opt;
    opt.scan_factor = p.u64_or("scan_factor", opt.scan_factor);
    if (method == "thm1") {
        auto set = index_set_from_json(p.at("set"));
        auto delta = p.rational("delta");
        auto r = synthesize_weight_thm1(set, delta, horizon, opt);
        auto cps = geometric_checkpoints(horizon, make_rational(5, 4));
        const auto err = check_plan(r.plan, {set}, opt.min_growth);
        const bool bound = thm1_bound_holds(r.plan, set, r.weight, delta, cps);
        auto weighted = estimate_densities(set, r.weight, horizon);
        auto unit = estimate_densities(set, WeightSeq::unit(), horizon);
        json doc = {{"method", "thm1"},
                    {"set", to_json(set)},
                    {"delta", to_string(delta)},
                    {"plan", to_json(r.plan)},
                    {"weight", to_json(r.weight)},
                    {"plan_check", err.empty() ? "ok" : err},
                    {"bound_holds", bound},
                    {"weighted_lower", to_string(weighted.lower_estimate)},
                    {"weighted_lower_display", display(weighted.lower_estimate)},
                    {"unit_lower", to_string(unit.lower_estimate)},
                    {"unit_lower_display", display(unit.lower_estimate)}};
        return {dump(doc), err.empty() && bound};
    }
    if (method == "multi") {
        std::vector<IndexSet> sets;
        std::vector<Rational> deltas;
        const auto& js = p.at("sets");
        const auto& jd = p.at("deltas");
        if (!js.is_array() || !jd.is_array() || js.size() != jd.size())
            throw ConfigError("forge: 'sets' and 'deltas' must be arrays of equal length");
        for (const auto& s : js) sets.push_back(index_set_from_json(s));
        for (const auto& d : jd) deltas.push_back(p.rational_of(d, "deltas"));
        auto part = PartitionWithBoundedGaps::residues(p.u64_or("modulus", sets.size()));
        if (part.parts.size() != sets.size()) throw ConfigError("forge: modulus must equal the number of sets");
        MultiForgeResult r;
        try {
            r = synthesize_weight_multi(sets, deltas, part, horizon, opt);
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
        const auto err = check_plan(r.plan, sets, opt.min_growth);
        const bool bound = multi_bound_holds(r, sets, deltas, part, r.weight);
        json lows = json::array();
        for (const auto& s : sets) {
            auto est = estimate_densities(s, r.weight, horizon);
            lows.push_back({{"lower", to_string(est.lower_estimate)}, {"display", display(est.lower_estimate)}});
        }
        json doc = {{"method", "multi"},        {"selection_order", r.selection_order}, {"plan", to_json(r.plan)},
                    {"weight", to_json(r.weight)}, {"plan_check", err.empty() ? "ok" : err}, {"bound_holds", bound},
                    {"weighted_lower", lows}};
        return {dump(doc), err.empty() && bound};
    }
    throw ConfigError("forge: unknown method '" + method + "'");
}

CommandResult run_schedule(const Params& p) {
    auto s = schedule_from_spec(p.get_or("schedule", "structural"), nullptr);
    auto checks = s.mode == ScheduleMode::structural ? check_structural(s) : check_asymptotic(s);
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.holds;
    json doc = {{"schedule", to_json(s)}, {"checks", to_json(checks)}};
    return {dump(doc), ok};
}

CommandResult run_orbit(const Params& p, Emit emit) {
    auto params = realize_spec(p.get_or("schedule", "structural"));
    auto x = vec(p.at("x"));
    const std::uint64_t steps = p.u64("steps");
    if (emit == Emit::csv) {
        std::ostringstream os;
        write_orbit_csv(os, params, x, steps);
        return {os.str(), true};
    }
    json doc = {{"x", to_json(x)}, {"steps", steps}, {"final", to_json(params.apply_power(x, steps))}};
    return {dump(doc), true};
}

CommandResult run_shadow(const Params& p) {
    auto params = realize_spec(p.get_or("schedule", "shadow"));
    auto x = vec(p.get_or("x", json{{"0", 1}}));
    auto eps = p.rational_or("epsilon", make_rational(1, 16));
    auto w = weight_from_json(p.get_or("weight", to_json(toys::shadow_weight())));
    auto alpha = alpha_sequence(w, p.u64_or("alpha_max", 256));
    auto c = build_shadowing_vector(params, x, eps, alpha);
    return {dump(to_json(c)), c.holds()};
}

std::vector<Rational> default_C(const CTypeParams& params, std::uint64_t l) {
    std::vector<Rational> C{Rational(1, 2)};
    for (const auto& h : prop50_hypothesis(params, l)) C.push_back(h.to_rational());
    return C;
}

CommandResult run_prop50(const Params& p) {
    auto params = realize_spec(p.get_or("schedule", "prop"));
    auto x = vec(p.at("x"));
    const std::uint64_t l = p.u64("l");
    if (l == 0 || l > params.n_max()) throw ConfigError("prop50: l must be in [1, n_max]");
    std::vector<Rational> C;
    if (p.has("C")) {
        if (!p.at("C").is_array()) throw ConfigError("prop50: 'C' must be an array C_0..C_l");
        for (const auto& c : p.at("C")) C.push_back(p.rational_of(c, "C"));
    } else {
        C = default_C(params, l);
    }
    const std::uint64_t j_max = p.u64_or("j_max", 2 * params.block_length(l));
    json rows = json::array();
    bool ok = true;
    std::vector<std::uint64_t> ns;
    if (p.has("n")) {
        ns.push_back(p.u64("n"));
    } else {
        for (std::uint64_t n = 0; n < l; ++n) ns.push_back(n);
    }
    for (auto n : ns) {
        auto r = prop50_check(params, x, l, n, C, j_max);
        ok = ok && r.holds();
        json row = {{"n", n}, {"conclusion1", r.conclusion1}, {"conclusion2", r.conclusion2}};
        if (!r.holds()) row["failing_j"] = r.failing_j;
        rows.push_back(row);
    }
    json hyp = json::array();
    for (const auto& h : prop50_hypothesis(params, l)) hyp.push_back(h.to_string());
    json doc = {{"x", to_json(x)}, {"l", l}, {"j_max", j_max}, {"hypothesis", hyp}, {"results", rows}, {"holds", ok}};
    return {dump(doc), ok};
}

CommandResult run_prop51(const Params& p) {
    auto params = realize_spec(p.get_or("schedule", "prop"));
    auto x = vec(p.at("x"));
    const std::uint64_t l = p.u64("l");
    if (l == 0 || l > params.n_max()) throw ConfigError("prop51: l must be in [1, n_max]");
    const std::uint64_t J = p.u64_or("J", 2 * params.block_length(l));
    Prop51Result r;
    try {
        r = (p.has("K0") || p.has("K1")) ? prop51_check(params, x, l, p.u64("K0"), p.u64("K1"), J)
                                         : prop51_check(params, x, l, J);
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("prop51: ") + e.what());
    }
    return {dump(to_json(r)), r.holds};
}

std::uint64_t default_step_horizon(const CTypeParams& params) {
    std::uint64_t longest = 0;
    for (std::uint64_t n = 0; n <= params.n_max(); ++n) longest = std::max(longest, params.block_length(n));
    return 4 * (2 * longest);
}

CommandResult run_hits(const Params& p, Emit emit) {
    auto params = realize_spec(p.get_or("schedule", "structural"));
    auto x = vec(p.at("x"));
    Ball ball{vec(p.get_or("center", p.at("x"))), p.rational("radius")};
    if (sgn(ball.radius) <= 0) throw ConfigError("hits: radius must be positive");
    auto w = weight_from_json(p.get_or("weight", "unit"));
    auto h = hitting_density(params, x, ball, p.u64_or("step_horizon", default_step_horizon(params)), w);
    if (emit == Emit::csv) {
        std::ostringstream os;
        write_density_csv(os, h.density);
        return {os.str(), true};
    }
    return {dump(to_json(h)), true};
}

CommandResult run_identity(const Params& p) {
    auto params = realize_spec(p.get_or("schedule", "structural"));
    std::vector<SparseVec> vectors;
    std::vector<WeightSeq> weights;
    std::vector<Ball> balls;
    for (const auto& v : p.at("vectors")) vectors.push_back(vec(v));
    for (const auto& w : p.get_or("weights", json::array({"unit", "harmonic"}))) weights.push_back(weight_from_json(w));
    for (const auto& b : p.at("balls")) {
        if (!b.is_object() || !b.contains("center") || !b.contains("radius") || b.size() != 2)
            throw ConfigError("identity: each ball is {\"center\": ..., \"radius\": ...}");
        balls.push_back({vec(b.at("center")), p.rational_of(b.at("radius"), "radius")});
        if (sgn(balls.back().radius) <= 0) throw ConfigError("identity: radius must be positive");
    }
    auto r = set_identity_check(params, vectors, weights, balls,
                                p.u64_or("step_horizon", default_step_horizon(params)),
                                p.rational_or("tol", make_rational(1, 20)));
    return {dump(to_json(r)), r.all_hold};
}

CommandResult run_verify_cmd(const Params& p, Emit emit) {
    VerifyOptions o;
    o.suite = p.str_or("suite", "all");
    const auto mode = p.str_or("mode", "structural");
    if (mode == "structural") {
        o.mode = ScheduleMode::structural;
    } else if (mode == "asymptotic") {
        o.mode = ScheduleMode::asymptotic;
    } else {
        throw ConfigError("verify: unknown mode '" + mode + "'");
    }
    o.seed = p.u64("seed");
    o.trials = p.u64_or("trials", o.trials);
    auto rep = run_verify(o);
    if (emit == Emit::json) {
        json lines = json::array();
        for (const auto& l : rep.lines)
            lines.push_back({{"suite", l.suite}, {"check", l.check}, {"passed", l.passed}, {"detail", l.detail}});
        return {dump({{"seed", o.seed}, {"mode", mode}, {"lines", lines}, {"passed", rep.all_passed()}}),
                rep.all_passed()};
    }
    std::ostringstream os;
    os << "seed " << o.seed << " mode " << mode << '\n';
    rep.write(os);
    return {os.str(), rep.all_passed()};
}

// Interprets a flag value: JSON when it parses as JSON, a plain string otherwise.
json flag_value(const std::string& s) {
    auto j = json::parse(s, nullptr, false);
    if (j.is_discarded()) return s;
    return j;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    // write-then-rename so a failed run never leaves a truncated file
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot write '" + path + "'");
        f << text;
        if (!f) throw ConfigError("cannot write '" + path + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot write '" + path + "'");
    }
}

}  // namespace

CommandResult execute(const std::string& command, const json& params, Emit emit) {
    auto it = commands().find(command);
    if (it == commands().end()) throw ConfigError("unknown command '" + command + "'");
    if (!it->second.emits.count(emit)) throw ConfigError(command + ": unsupported emit format");
    Params p(params, command);
    if (command == "density") return run_density(p, emit);
    if (command == "forge") return run_forge(p);
    if (command == "schedule") return run_schedule(p);
    if (command == "orbit") return run_orbit(p, emit);
    if (command == "shadow") return run_shadow(p);
    if (command == "prop50") return run_prop50(p);
    if (command == "prop51") return run_prop51(p);
    if (command == "hits") return run_hits(p, emit);
    if (command == "identity") return run_identity(p);
    return run_verify_cmd(p, emit);
}

ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "command" && it.key() != "params" && it.key() != "emit" && it.key() != "out")
            throw ConfigError("config: unknown key '" + it.key() + "'");
    if (!doc.contains("command") || !doc.at("command").is_string()) throw ConfigError("config: 'command' string required");
    ExperimentConfig c;
    c.command = doc.at("command").get<std::string>();
    auto it = commands().find(c.command);
    if (it == commands().end()) throw ConfigError("config: unknown command '" + c.command + "'");
    c.params = doc.value("params", json::object());
    c.emit = it->second.default_emit;
    if (doc.contains("emit")) {
        if (!doc.at("emit").is_string()) throw ConfigError("config: 'emit' must be a string");
        c.emit = parse_emit(doc.at("emit").get<std::string>());
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) throw ConfigError("config: 'out' must be a string");
        c.out = doc.at("out").get<std::string>();
    }
    // validate params now, not midway through a run
    Params(c.params, c.command);
    return c;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"hypodense: weighted densities and C-type operator experiments"};
    app.require_subcommand(1);
    std::string emit_flag, out_flag;
    app.add_option("--emit", emit_flag, "json | csv | text");
    app.add_option("--out", out_flag, "output path (default stdout)");

    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, spec] : commands()) {
        auto* sub = app.add_subcommand(name, spec.help);
        subs[name] = sub;
        for (const auto& key : spec.keys) {
            std::string flag = key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            sub->add_option("--" + flag, raw[name][key], "JSON value or plain string");
        }
        sub->add_option("--emit", emit_flag, "json | csv | text");
        sub->add_option("--out", out_flag, "output path (default stdout)");
    }
    std::string config_path;
    auto* run = app.add_subcommand("run", "execute a JSON experiment config");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--emit", emit_flag, "override the config's format");
    run->add_option("--out", out_flag, "override the config's output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig cfg;
        if (run->parsed()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot read config '" + config_path + "'");
            json doc = json::parse(f, nullptr, false);
            if (doc.is_discarded()) throw ConfigError("config '" + config_path + "' is not valid JSON");
            cfg = parse_config(doc);
        } else {
            for (const auto& [name, sub] : subs) {
                if (!sub->parsed()) continue;
                cfg.command = name;
                cfg.params = json::object();
                for (const auto& key : commands().at(name).keys) {
                    std::string flag = key;
                    std::replace(flag.begin(), flag.end(), '_', '-');
                    if (sub->count("--" + flag) > 0) cfg.params[key] = flag_value(raw[name][key]);
                }
                cfg.emit = commands().at(name).default_emit;
            }
        }
        if (!emit_flag.empty()) cfg.emit = parse_emit(emit_flag);
        if (!out_flag.empty()) cfg.out = out_flag;

        auto result = execute(cfg.command, cfg.params, cfg.emit);
        write_output(result.output, cfg.out);
        if (!result.passed) std::cerr << "hypodense: " << cfg.command << ": a check failed\n";
        return result.passed ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "hypodense: config error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "hypodense: invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "hypodense: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "hypodense: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace hypodense
