#include "doctest.h"

#include "rmdp/cli.hpp"
#include "rmdp/instance_io.hpp"
#include "support/hand_models.hpp"

#include <fstream>
#include <sstream>

using namespace rmdp;

namespace {

const std::string kData = RMDP_TEST_DATA;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::string& command, const std::string& file, const std::string& format = "json",
               std::uint64_t cap = 10'000'000) {
    RunConfig cfg;
    cfg.command = command;
    cfg.input = file.empty() ? "" : kData + "/" + file;
    cfg.format = format;
    cfg.cap = cap;
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json load(const std::string& file) { return json::parse(slurp(kData + "/" + file)); }

} // namespace

TEST_CASE("solve on the counterexample reports -1/4") {
    const auto r = invoke("solve", "counterexample.json");
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["command"] == "solve");
    CHECK(j["result"]["J"][0][0].get<double>() == -0.25);
    CHECK(j["digest"] == digest(slurp(kData + "/counterexample.json")));
    CHECK(j["tolerances"]["tie"].get<double>() == 1e-12);
    CHECK(r.err.empty());
}

TEST_CASE("nature-first and gap on the counterexample") {
    CHECK(json::parse(invoke("solve-nature-first", "counterexample.json").out)["result"]["J"][0][0].get<double>() ==
          -0.5);
    const auto g = json::parse(invoke("gap", "counterexample.json").out)["result"];
    CHECK(g["max_gap"].get<double>() == 0.25);
    CHECK(g["weak_duality"] == true);
}

TEST_CASE("counterexample command reports the three values") {
    const auto r = invoke("counterexample", "");
    REQUIRE(r.code == kExitOk);
    const auto j = json::parse(r.out)["result"];
    CHECK(j["upper"].get<double>() == -0.25);
    CHECK(j["lower"].get<double>() == -0.5);
    CHECK(std::abs(j["uniform_mixing"].get<double>() + 1.0 / 3.0) <= 1e-3);
    CHECK(j["saddle"].is_null());
}

TEST_CASE("validate on a malformed instance exits 2 with the violations") {
    const auto r = invoke("validate", "malformed.json");
    CHECK(r.code == kExitValidation);
    const auto report = json::parse(r.out);
    CHECK(report["result"]["violations"].size() == 2);
    const auto e = json::parse(r.err);
    CHECK(e["exit"] == 2);
    CHECK(e["violations"].size() == 2);
    CHECK(invoke("solve", "malformed.json").code == kExitValidation);
    CHECK(invoke("validate", "small.json").code == kExitOk);
}

TEST_CASE("oracle over the cap exits 3") {
    const auto r = invoke("oracle", "oversized.json", "json", 10);
    CHECK(r.code == kExitRefused);
    CHECK(json::parse(r.err)["error"] == "refused");
    CHECK(r.out.empty());
}

TEST_CASE("schema, usage and format errors exit 4") {
    CHECK(invoke("solve", "not_json.txt").code == kExitSchema);
    CHECK(invoke("solve", "missing_file.json").code == kExitSchema);
    CHECK(invoke("no-such-command", "small.json").code == kExitSchema);
    CHECK(invoke("solve", "small.json", "xml").code == kExitSchema);
    CHECK(invoke("validate", "small.json", "csv").code == kExitSchema);
    CHECK(invoke("solve", "").code == kExitSchema);
    CHECK(invoke("evaluate", "counterexample.json").code == kExitSchema);
    CHECK(invoke("lq", "small.json").code == kExitSchema);
}

TEST_CASE("reports are byte-identical across runs") {
    for (const char* cmd : {"solve", "solve-nature-first", "oracle", "gap", "bounds", "evaluate"}) {
        const auto a = invoke(cmd, "small.json");
        const auto b = invoke(cmd, "small.json");
        REQUIRE(a.code == kExitOk);
        CHECK(a.out == b.out);
    }
    CHECK(invoke("energy", "energy.json").out == invoke("energy", "energy.json").out);
    CHECK(invoke("lq", "lq_hand.json", "csv").out == invoke("lq", "lq_hand.json", "csv").out);
}

TEST_CASE("tolerance override is reported") {
    RunConfig cfg;
    cfg.command = "gap";
    cfg.input = kData + "/small.json";
    cfg.tol = 1e-6;
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == kExitOk);
    CHECK(json::parse(out.str())["tolerances"]["report"].get<double>() == 1e-6);
}

TEST_CASE("parsed table instance matches the hand model") {
    const Instance inst = parse_instance(load("small.json"));
    const auto hand = testing::two_state_model(2, {Density{{2.0, 0.0}}, Density{{0.0, 2.0}}});
    CHECK(solve_robust(inst.model).J == solve_robust(hand).J);
    REQUIRE(inst.controller.has_value());
    REQUIRE(inst.nature.has_value());
    REQUIRE(inst.bounding.has_value());
    CHECK(inst.bounding->alpha == 1.5);
    CHECK(evaluate_pair(inst.model, *inst.controller, *inst.nature) ==
          evaluate_pair(hand, *inst.controller, *inst.nature));
}

TEST_CASE("spectral instances parse and solve in risk form") {
    const auto r = invoke("risk", "spectral.json");
    REQUIRE(r.code == kExitOk);
    const auto J = json::parse(r.out)["result"]["J"];
    // ES_0.5 of a payoff with two equally likely values is its maximum.
    CHECK(J[0][0].get<double>() == 1.0);
    CHECK(J[0][1].get<double>() == 2.0);
}

TEST_CASE("schema errors name the offending field") {
    auto j = load("small.json");
    j["stages"][0].erase("disturbance");
    CHECK_THROWS_WITH_AS(parse_instance(j), doctest::Contains("disturbance"), SchemaError);
    auto k = load("small.json");
    k["stages"][0]["cost"][1][0] = json::array({0.0});
    CHECK_THROWS_AS(parse_instance(k), SchemaError);
    auto b = load("small.json");
    b["stages"][0]["transition"] = {{"builtin", "nope"}};
    CHECK_THROWS_WITH_AS(parse_instance(b), doctest::Contains("nope"), SchemaError);
}

TEST_CASE("csv reports") {
    const auto r = invoke("solve", "small.json", "csv");
    REQUIRE(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string first, header, row;
    std::getline(lines, first);
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(first.rfind("# command=solve digest=", 0) == 0);
    CHECK(header == "n,state,J,action,generator");
    CHECK(row == "0,0,2,0,1");
    const auto lq = invoke("lq", "lq_hand.json", "csv");
    CHECK(lq.out.find("n,K,L,const,theta_star\n0,1.5,-0.5,0,1;0;1;0;0;0\n") != std::string::npos);
}

TEST_CASE("lq and energy commands") {
    const auto lq = json::parse(invoke("lq", "lq_hand.json").out)["result"];
    CHECK(lq["K"][0].get<double>() == 1.5);
    CHECK(lq["L"][0].get<double>() == -0.5);
    const auto e = json::parse(invoke("energy", "energy.json").out)["result"];
    CHECK(e["decreasing"] == true);
    CHECK(e["st_reduction"]["equal"] == true);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, -0.25, 1e-300, 123456789.125, 1.0 / 3.0})
        CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(2.0) == "2");
}
