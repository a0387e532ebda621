#include <cmath>
#include <sstream>

#include "doctest.h"
#include "uq2/cli.hpp"
#include "uq2/report.hpp"

using namespace uq2;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("doubles print round-trippably") {
    CHECK(format_double(1.0) == "1.0");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1e-300) == "1e-300");
    CHECK(format_double(-2.5e20) == "-2.5e+20");
    CHECK(std::stod(format_double(30.0 / 201.0)) == 30.0 / 201.0);
}

TEST_CASE("JSON output parses back to the same value") {
    Json v = Json::object();
    v["a"] = 1;
    v["b"] = Json::array({0.5, -2.25, 3});
    v["c"] = Json{{"x", "quote\"d"}, {"y", true}, {"z", nullptr}};
    v["e"] = Json::array();
    const std::string text = emit_json(v);
    CHECK(Json::parse(text) == v);
    CHECK(emit_json(Json::parse(text)) == text);
    CHECK_THROWS_AS(emit_json(Json{{"bad", std::nan("")}}), std::domain_error);
}

TEST_CASE("CSV rows and quoting") {
    CHECK(emit_csv(Json::object()) == "path,value\r\n");
    const std::string csv = emit_csv(Json{{"r", Json{{"x", 1.5}}}, {"v", Json::array({1, 2})}, {"s", "a,b"}});
    CHECK(csv == "path,value\r\nr.x,1.5\r\nv.0,1\r\nv.1,2\r\ns,\"a,b\"\r\n");
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("report object layout") {
    Report r;
    r.subcommand = "relations";
    r.warnings.push_back("w");
    const Json j = r.to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"subcommand", "config", "results", "warnings", "timings"});
}

TEST_CASE("watatani through the command line") {
    const Run r = run_cli({"watatani", "--which", "phi", "--n", "10"});
    CHECK(r.code == kExitPass);
    const Json j = Json::parse(r.out);
    CHECK(j["results"]["probe"]["bound_c"].get<double>() == 30.0 / 201.0);
    CHECK(j["timings"].empty());
    // identical invocations give identical bytes
    CHECK(run_cli({"watatani", "--which", "phi", "--n", "10"}).out == r.out);
}

TEST_CASE("usage errors exit with 1") {
    CHECK(run_cli({"no-such-subcommand"}).code == kExitUsage);
    CHECK(run_cli({}).code == kExitUsage);
    CHECK(run_cli({"--q-modulus", "1.5", "relations"}).code == kExitUsage);
    CHECK(run_cli({"watatani", "--which", "chi"}).code == kExitUsage);
    CHECK(run_cli({"expect", "--monomial", "1,2,3"}).code == kExitUsage);
    CHECK(run_cli({"watatani", "--n", "0"}).code == kExitUsage);
}

TEST_CASE("global options are accepted after the subcommand") {
    const Run r = run_cli({"center-probe", "--q-theta", "0", "--M", "2"});
    CHECK(r.code == kExitPass);
    const Json j = Json::parse(r.out);
    CHECK(j["results"]["dimension"].get<int>() >= 5);
    CHECK_FALSE(j["warnings"].empty());  // real q is flagged
}

TEST_CASE("CSV output of a command") {
    const Run r = run_cli({"--format", "csv", "watatani", "--n", "3"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.rfind("path,value\r\n", 0) == 0);
    CHECK(r.out.find("probe.bound_c,0.47368421052631576\r\n") != std::string::npos);
}

TEST_CASE("timings appear only on request") {
    const Run r = run_cli({"--timings", "watatani", "--n", "2"});
    const Json j = Json::parse(r.out);
    CHECK(j["timings"].contains("total_seconds"));
}
