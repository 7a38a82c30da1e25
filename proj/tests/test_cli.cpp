#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "adelic/cli.hpp"

using namespace adelic;

namespace {

RunConfig cfg(const std::string& command) {
    RunConfig c;
    c.command = command;
    return c;
}

json surface(long q, std::initializer_list<std::pair<const char*, long>> terms) {
    json d = json::array();
    for (const auto& [f, n] : terms) d.push_back({{"form", f}, {"coeff", n}});
    return {{"q", q}, {"divisor", d}};
}

}  // namespace

TEST_CASE("rr1d on F_2(t), D = 3[inf]") {
    auto c = cfg("rr1d");
    c.field = {{"kind", "function_field"}, {"q", 2}};
    c.divisor = json::parse(R"([{"place": "inf", "coeff": 3}])");
    const auto r = run(c);
    const auto& res = r.body["results"];
    CHECK(res["h0"]["value_logq"] == 4);
    CHECK(res["h0"]["value"].get<double>() == doctest::Approx(4 * std::log(2.0)));
    CHECK(res["h1"]["value_logq"] == 0);
    CHECK(res["chi"]["value_logq"] == 4);
    CHECK(r.body["defects"]["rr_defect"]["value"] == 0);
    CHECK(r.body["defects"]["rr_defect"]["exact"] == true);
    CHECK(r.all_pass);
}

TEST_CASE("rr1d with a finite place and a number field") {
    auto c = cfg("rr1d");
    c.field = {{"kind", "function_field"}, {"q", 3}};
    c.divisor = json::parse(R"([{"place": {"poly": [1, 0, 1]}, "coeff": 2}, {"place": "inf", "coeff": -1}])");
    auto r = run(c);
    CHECK(r.body["results"]["degree"] == 3);
    CHECK(r.body["results"]["h0"]["value_logq"] == 4);
    CHECK(r.all_pass);

    c.field = json::parse(R"({"kind": "number_field", "min_poly": [-2, 0, 1]})");
    c.divisor = json::parse(R"([{"place": {"prime": 7, "index": 1}, "coeff": 1}, {"place": {"real": 0}, "coeff": 0.25}])");
    r = run(c);
    CHECK(r.all_pass);
    CHECK(r.body["defects"]["rr_defect"]["exact"] == false);
}

TEST_CASE("theta on Q, D = 0") {
    auto c = cfg("theta");
    c.field = {{"kind", "rational"}};
    const auto r = run(c);
    double direct = 0;
    for (int n = -30; n <= 30; ++n) direct += std::exp(-M_PI * n * n);
    CHECK(r.body["results"]["h0"].get<double>() == doctest::Approx(std::log(direct)).epsilon(1e-12));
    CHECK(r.body["results"]["h0"].get<double>() == doctest::Approx(0.08290152).epsilon(1e-7));
    CHECK(r.all_pass);
}

TEST_CASE("surface-index of two lines over F_3") {
    auto c = cfg("surface-index");
    c.divisor = surface(3, {{"X", 1}});
    c.divisor_b = surface(3, {{"Y", 1}});
    const auto r = run(c);
    CHECK(r.body["results"]["index"]["value_logq"] == 1);
    CHECK(r.body["seed"] == c.seed);
    CHECK(r.all_pass);
}

TEST_CASE("surface-chi on a mixed divisor") {
    auto c = cfg("surface-chi");
    c.divisor = surface(5, {{"X^2+Y^2+Z^2", 2}, {"Z", -1}});
    const auto r = run(c);
    CHECK(r.body["results"]["degree"] == 3);
    CHECK(r.body["results"]["chi_relative"]["value_logq"] == 9);
    CHECK(r.body["warnings"].empty());
    CHECK(r.all_pass);

    c.divisor = surface(5, {{"Y^2Z-X^3", 1}});
    CHECK(run(c).body["warnings"].size() == 1);
}

TEST_CASE("residue-verify default window") {
    auto c = cfg("residue-verify");
    c.field = {{"kind", "function_field"}, {"q", 2}};
    c.divisor = json::parse(R"([{"place": {"poly": [1, 1]}, "coeff": 1}])");
    c.samples = 50;
    const auto r = run(c);
    CHECK(r.body["results"]["window"]["places"].size() == 3);
    CHECK(r.body["results"]["perp"]["perp_match"] == true);
    CHECK(r.all_pass);

    c.window_spec = json::parse(R"({"places": ["inf", {"poly": [1, 1]}], "lower": -2, "upper": 2})");
    CHECK(run(c).body["results"]["window"]["places"].size() == 2);
    c.window_spec = json::parse(R"({"places": ["inf"], "lower": -2, "upper": 2})");
    CHECK_THROWS_WITH(run(c), doctest::Contains("outside the window"));
}

TEST_CASE("verify-all subset") {
    auto c = cfg("verify-all");
    c.criteria = {1, 4};
    const auto r = run(c);
    CHECK(r.body["results"]["criteria"].size() == 2);
    CHECK(r.all_pass);
}

TEST_CASE("reports are deterministic and their input round-trips") {
    std::vector<RunConfig> configs;
    auto a = cfg("rr1d");
    a.field = {{"kind", "function_field"}, {"q", 4}};
    a.divisor = json::parse(R"([{"place": "inf", "coeff": 2}])");
    configs.push_back(a);
    auto b = cfg("surface-chi");
    b.divisor = surface(7, {{"X^3+Y^3+Z^3", 1}, {"X", -2}});
    b.seed = 99;
    configs.push_back(b);
    auto d = cfg("residue-verify");
    d.field = {{"kind", "function_field"}, {"q", 3}};
    d.window = 2;
    d.samples = 20;
    configs.push_back(d);
    for (const auto& c : configs) {
        const auto r1 = run(c).body.dump();
        const auto r2 = run(c).body.dump();
        CHECK(r1 == r2);
        const auto back = RunConfig::from_json(json::parse(r1));
        CHECK(back.to_json() == c.to_json());
        CHECK(run(back).body.dump() == r1);
    }
}

TEST_CASE("config validation") {
    auto c = cfg("rr1d");
    c.field = {{"kind", "rational"}};
    c.tol = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.tol = 1e-12;
    c.precision = 52;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.precision = 64;
    c.format = "xml";
    CHECK_THROWS_AS(validate(c), ConfigError);
    c.format = "table";
    CHECK_NOTHROW(validate(c));
    CHECK_THROWS_AS(validate(cfg("frobnicate")), ConfigError);
    CHECK_THROWS_AS(validate(cfg("rr1d")), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json(json{{"command", "rr1d"}, {"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_json(json{{"command", "verify-all"}, {"criteria", {10}}}), ConfigError);

    c.field = {{"kind", "function_field"}, {"q", 2}};
    c.divisor = json::parse(R"([{"place": {"prime": 5}, "coeff": 1}])");
    CHECK_THROWS_AS(run(c), ConfigError);
    c.divisor = json::parse(R"([{"place": {"poly": [0, 0, 1]}, "coeff": 1}])");
    CHECK_THROWS(run(c));  // t^2 is not a place: domain error from the field layer
}

TEST_CASE("read_json_file reports the line") {
    const std::string path = "cli_test_bad.json";
    {
        std::ofstream out(path);
        out << "{\n  \"kind\": \"rational\",\n  oops\n}\n";
    }
    try {
        read_json_file(path);
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(path + ":3:") == 0);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file("does/not/exist.json"), ConfigError);
}

TEST_CASE("precision from the environment") {
    ::setenv("ADELIC_PRECISION", "53", 1);
    CHECK(default_precision() == 53);
    ::setenv("ADELIC_PRECISION", "12", 1);
    CHECK_THROWS_AS(default_precision(), ConfigError);
    ::unsetenv("ADELIC_PRECISION");
    CHECK(default_precision() == 64);
}

TEST_CASE("table rendering") {
    auto c = cfg("surface-index");
    c.divisor = surface(3, {{"X", 2}});
    c.divisor_b = surface(3, {{"Y", 1}});
    auto body = run(c).body;
    auto t = render_table(body);
    CHECK(t.find("index") != std::string::npos);
    CHECK(t.find("2 log q") != std::string::npos);
    body["input"]["units"] = "nat";
    CHECK(render_table(body).find("log q") == std::string::npos);
}
