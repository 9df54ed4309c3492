#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "quadctrl/analyze.hpp"
#include "quadctrl/json_io.hpp"

using namespace quadctrl;
using quadctrl::testing::Rng;
using quadctrl::testing::random_system;

namespace {

Json minimal_spec() {
    return Json{{"n", 3},
                {"k", 1},
                {"L", {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
                {"a", {0, 0, 0}},
                {"b", {0, 0, 1}},
                {"c", {0, 0, 0}},
                {"controls", {{1, 0, 0}, {0, 1, 0}}}};
}

}  // namespace

TEST_CASE("mode inference") {
    auto spec = minimal_spec();
    CHECK(mode_of(parse_system_json(spec)) == Mode::Rational);
    spec["a"] = {0.5, 0, 0};
    CHECK(mode_of(parse_system_json(spec)) == Mode::Float);
    spec["a"] = {"1/2", 0, 0};
    CHECK(mode_of(parse_system_json(spec)) == Mode::Rational);
    spec["mode"] = "float";
    CHECK(mode_of(parse_system_json(spec)) == Mode::Float);
}

TEST_CASE("fraction strings parse exactly") {
    auto spec = minimal_spec();
    spec["b"] = {"0", "-3/7", "1"};
    auto sys = std::get<RSystem>(parse_system_json(spec));
    CHECK(sys.b[1] == Rational(-3, 7));
}

TEST_CASE("parse errors carry the failing field") {
    auto missing = minimal_spec();
    missing.erase("L");
    CHECK_THROWS_WITH_AS(parse_system_json(missing), "missing field 'L'", ParseError);
    auto badmode = minimal_spec();
    badmode["mode"] = "decimal";
    CHECK_THROWS_AS(parse_system_json(badmode), ParseError);
    auto badden = minimal_spec();
    badden["a"] = {"1/0", 0, 0};
    CHECK_THROWS_AS(parse_system_json(badden), ParseError);
    auto dep = minimal_spec();
    dep["controls"] = {{1, 0, 0}, {2, 0, 0}};
    CHECK_THROWS_AS(parse_system_json(dep), ParseError);
    CHECK_THROWS_AS(parse_system_json(Json::array()), ParseError);
    CHECK_THROWS_AS(parse_system_file("/nonexistent/path.json"), ParseError);
}

TEST_CASE("serialization round trip preserves the system") {
    Rng rng(801);
    for (int trial = 0; trial < 200; ++trial) {
        RSystem sys = random_system(rng);
        Json j = system_to_json(sys);
        auto back = std::get<RSystem>(parse_system_json(j));
        CHECK(back.n == sys.n);
        CHECK(back.k == sys.k);
        CHECK(back.L == sys.L);
        CHECK(back.a == sys.a);
        CHECK(back.b == sys.b);
        CHECK(back.c == sys.c);
        CHECK(back.F == sys.F);
        CHECK(system_to_json(back) == j);
    }
}

TEST_CASE("float round trip") {
    auto spec = minimal_spec();
    spec["a"] = {0.25, -1.5, 0};
    spec["tol"] = 1e-9;
    auto sys = std::get<DSystem>(parse_system_json(spec));
    CHECK(sys.a[0] == 0.25);
    CHECK(sys.tol == 1e-9);
    Json j = system_to_json(sys);
    auto back = std::get<DSystem>(parse_system_json(j));
    CHECK(back.a == sys.a);
    CHECK(back.tol == sys.tol);
}

TEST_CASE("analysis report fields and schema version") {
    auto sys = quadctrl::testing::example_system("r5-nonaccessible");
    AnalyzeOptions opt;
    opt.oracle = true;
    opt.simulate = true;
    opt.sim_samples = 100;
    auto report = analyze(sys, opt);
    Json j = report.to_json();
    CHECK(j.at("schema_version") == kReportSchemaVersion);
    CHECK(j.at("tool_version") == kToolVersion);
    CHECK(j.at("mode") == "rational");
    CHECK(j.at("chain").at("dims") == Json({1, 2, 2, 2, 2}));
    CHECK(j.at("accessibility").at("tag") == "NotAccessible");
    CHECK(j.at("stlc").at("tag") == "NotAccessible");
    CHECK(j.at("oracle").at("agrees_with_chain") == true);
    CHECK(j.at("simulation").at("empirical_rank") == 2);
    CHECK(!j.contains("warnings"));
    std::string text = report.to_text();
    CHECK(text.find("NotAccessible") != std::string::npos);
    CHECK(text.find("agrees with chain") != std::string::npos);
}

TEST_CASE("report system spec round trips to identical verdicts") {
    for (const auto& ex : bundled_examples()) {
        auto report = analyze(ex.system);
        auto reparsed = parse_system_json(report.system);
        auto report2 = analyze(reparsed);
        CHECK(report.stlc.tag == report2.stlc.tag);
        CHECK(report.stlc.rule == report2.stlc.rule);
        CHECK(report.accessibility.tag == report2.accessibility.tag);
        CHECK(report.chain.at("dims") == report2.chain.at("dims"));
        CHECK(report2.system == report.system);
    }
}

TEST_CASE("float mode analysis of a rational example agrees") {
    auto rsys = quadctrl::testing::example_system("r3-stlc");
    auto report_r = analyze(rsys);
    auto report_d = analyze(to_double_system(rsys));
    CHECK(report_d.mode == Mode::Float);
    CHECK(report_r.stlc.tag == report_d.stlc.tag);
    CHECK(report_r.chain.at("dims") == report_d.chain.at("dims"));
}

TEST_CASE("decisive flag drives the exit code contract") {
    auto sys = quadctrl::testing::example_system("r3-stlc");
    CHECK(analyze(sys).decisive());
}
