#include <doctest.h>

#include "hypodense/cli.hpp"

using namespace hypodense;

TEST_CASE("config validation") {
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"density","params":{},"colour":1})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"nope"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"command":"density","params":{"sett":"evens"}})")), ConfigError);
    auto c = parse_config(json::parse(R"({"command":"density","params":{"set":"evens","horizon":100}})"));
    CHECK(c.emit == Emit::csv);
}

TEST_CASE("density csv") {
    auto r = execute("density", json::parse(R"({"set":"evens","horizon":100})"), Emit::csv);
    CHECK(r.passed);
    CHECK(r.output.rfind("N,Q_numerator,Q_denominator,Q_float_display\n", 0) == 0);
    CHECK(r.output.find("\n100,1,2,0.5\n") != std::string::npos);
}

TEST_CASE("bad params are config errors") {
    CHECK_THROWS_AS(execute("density", json::parse(R"({"set":"primes","horizon":100})"), Emit::csv), ConfigError);
    CHECK_THROWS_AS(execute("density", json::parse(R"({"set":"evens","horizon":5})"), Emit::csv), ConfigError);
    CHECK_THROWS_AS(execute("verify", json::parse(R"({"suite":"all"})"), Emit::text), ConfigError);
    CHECK_THROWS_AS(execute("schedule", json::parse(R"({"schedule":{"mode":"x"}})"), Emit::json), ConfigError);
}

TEST_CASE("json roundtrip of sets and weights") {
    for (const char* s : {R"("evens")", R"({"kind":"geometric","base":4,"lo_mult":1,"hi_mult":2,"first_k":0})",
                          R"({"kind":"complement","of":{"kind":"explicit","elements":[1,2,9]}})"}) {
        auto set = index_set_from_json(json::parse(s));
        auto again = index_set_from_json(to_json(set));
        for (std::uint64_t n = 0; n < 200; ++n) CHECK(set.contains(n) == again.contains(n));
    }
    auto w = weight_from_json(json::parse(R"({"kind":"block_constant","breakpoints":[0,3,7],"tail_mult":3})"));
    auto w2 = weight_from_json(to_json(w));
    for (std::uint64_t n = 0; n < 200; ++n) CHECK(w.value(n) == w2.value(n));
}

TEST_CASE("shadow and schedule commands") {
    auto s = execute("shadow", json::object(), Emit::json);
    CHECK(s.passed);
    auto doc = json::parse(s.output);
    CHECK(doc["eq9_target"] == "2^11");
    auto a = execute("schedule", json::parse(R"({"schedule":"asymptotic"})"), Emit::json);
    CHECK(a.passed);
}
