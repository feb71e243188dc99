#include <gtest/gtest.h>

#include "bmo/cli/commands.hpp"

using namespace bmo;
using namespace bmo::cli;

namespace {

void expect_round_trip(const Report& r) {
    json j = json::parse(r.to_json().dump());
    EXPECT_EQ(Report::from_json(j), r) << r.command;
    EXPECT_EQ(Report::from_json(j).render(Format::json), r.render(Format::json));
}

}  // namespace

TEST(Report, SchemaKeysInOrder) {
    Report r = symbol_legendre(1, 7, {});
    json j = r.to_json();
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "params", "result", "status", "timings"}));
    EXPECT_TRUE(j["timings"].empty());
}

TEST(Report, JsonRoundTrip) {
    GlobalOptions o;
    o.max_prime = 100;
    expect_round_trip(symbol_legendre(1, 7, o));
    expect_round_trip(symbol_hilbert2(Rational(3), Rational(17), std::nullopt, o));
    expect_round_trip(rl_verify(2, 17, 20, o));
    expect_round_trip(rl_search(2, o));
    expect_round_trip(elkies_verify(Rational(1), o));
    Report t = rl_search(2, GlobalOptions{std::nullopt, 100, 0, Format::json, true});
    EXPECT_FALSE(t.timings.empty());
    expect_round_trip(t);
}

TEST(Report, UnknownStatusRejected) {
    json j = symbol_legendre(1, 7, {}).to_json();
    j["status"] = "maybe";
    EXPECT_THROW(Report::from_json(j), DomainError);
}

TEST(Report, DeterministicForFixedSeed) {
    for (std::uint64_t seed : {0ULL, 7ULL}) {
        GlobalOptions o;
        o.seed = seed;
        EXPECT_EQ(rl_verify(2, 17, 20, o).render(Format::json), rl_verify(2, 17, 20, o).render(Format::json));
        EXPECT_EQ(symbol_hilbert3(Rational(2), Rational(3), o).render(Format::json),
                  symbol_hilbert3(Rational(2), Rational(3), o).render(Format::json));
    }
}

TEST(Report, TextRendering) {
    std::string s = symbol_legendre(1, 7, {}).render(Format::text);
    EXPECT_NE(s.find("symbol legendre: ok"), std::string::npos);
    EXPECT_NE(s.find("value = 1"), std::string::npos);
}

TEST(Status, ExitCodes) {
    EXPECT_EQ(exit_code(Status::ok), 0);
    EXPECT_EQ(exit_code(Status::obstructed), 0);
    EXPECT_EQ(exit_code(Status::no_local_point), 0);
    EXPECT_EQ(exit_code(Status::inconclusive), 2);
    EXPECT_EQ(exit_code(Status::error), 1);
    for (Status s : {Status::ok, Status::obstructed, Status::no_local_point, Status::inconclusive, Status::error})
        EXPECT_EQ(parse_status(to_string(s)), s);
}

TEST(Commands, KnownExamples) {
    Report v = rl_verify(2, 17, 20, {});
    EXPECT_EQ(v.status, Status::obstructed);
    EXPECT_EQ(v.result["total"], "1/2");

    GlobalOptions o;
    o.max_prime = 100;
    EXPECT_EQ(rl_search(2, o).result["primes"], json::array({17, 41, 97}));

    Report l = symbol_legendre(1, 7, {});
    EXPECT_EQ(l.status, Status::ok);
    EXPECT_EQ(l.result["value"], 1);
}

TEST(Commands, ErrorsBecomeStatuses) {
    EXPECT_EQ(symbol_legendre(3, 9, {}).status, Status::error);
    EXPECT_EQ(rl_verify(4, 17, 20, {}).status, Status::error);
    Report h = symbol_hilbert2(Rational(0), Rational(3), Place::finite(3), {});
    EXPECT_EQ(h.status, Status::error);
    EXPECT_TRUE(h.result.contains("error"));
}

TEST(Commands, InvariantsAreFractionStrings) {
    Report h = symbol_hilbert2(Rational(3), Rational(17), std::nullopt, {});
    EXPECT_EQ(h.result["contributions"]["3"], "1/2");
    EXPECT_EQ(h.result["contributions"]["17"], "1/2");
    EXPECT_EQ(h.result["total"], "0");
}

TEST(Commands, ParseHelpers) {
    EXPECT_FALSE(parse_t("inf").has_value());
    EXPECT_EQ(*parse_t("-3/4"), Rational(-3, 4));
    EXPECT_TRUE(parse_place("inf").is_infinite());
    EXPECT_EQ(parse_place("17"), Place::finite(17));
    EXPECT_THROW(parse_place("15"), DomainError);
    EXPECT_THROW(parse_integer("x"), DomainError);
}
