#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fanoqc/cache.hpp"
#include "fanoqc/errors.hpp"
#include "fanoqc/multipoint.hpp"
#include "fanoqc/quantum.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace fanoqc;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(FANOQC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path tmp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

CacheBundle quintic_bundle() {
    Target t = validate_target(6, {5});
    OnePointTable one(t);
    TwoPointTable two(one);
    two.fill_to(2);
    MultipointEngine engine(one, 3);
    engine.solve_layer(2, 1);
    engine.solve_layer(3, 1);
    return snapshot(one, &two, &engine);
}

} // namespace

TEST_CASE("serialization round-trips bit for bit") {
    CacheBundle bundle = quintic_bundle();
    std::string text = serialize_cache(bundle);
    CacheBundle back = parse_cache(text);
    CHECK(serialize_cache(back) == text);
    CHECK(back.one_point == bundle.one_point);
    CHECK(back.two_point == bundle.two_point);
    CHECK(back.multipoint == bundle.multipoint);
    CHECK(back.target.fingerprint() == bundle.target.fingerprint());
}

TEST_CASE("import validates fingerprint and spot identities") {
    CacheBundle bundle = quintic_bundle();
    std::string text = serialize_cache(bundle);

    CHECK_NOTHROW(import_cache(text, bundle.target));
    CHECK_THROWS_AS(import_cache(text, validate_target(4, {})), CacheError);

    // a tampered one-point value trips the recomputation of the lowest degree
    json j = json::parse(text);
    j["one_point"]["1"][0] = "121/1";
    CHECK_THROWS_AS(import_cache(j.dump(2) + "\n", bundle.target), CacheError);

    // a tampered two-point value at degree 1 trips the fresh recompute
    j = json::parse(text);
    j["two_point"]["1"][2][4] = "3851/1";
    CHECK_THROWS_AS(import_cache(j.dump(2) + "\n", bundle.target), CacheError);

    // a tampered three-point value trips the divisor reduction
    j = json::parse(text);
    bool tampered = false;
    for (auto& entry : j["multipoint"]) {
        auto& ins = entry["ins"];
        if (entry["d"] == 1 && ins.size() == 3 && ins[0] == json::array({1, 0}) &&
            ins[1] == json::array({2, 0}) && ins[2] == json::array({4, 0})) {
            entry["v"] = "3849/1";
            tampered = true;
        }
    }
    REQUIRE(tampered);
    CHECK_THROWS_AS(import_cache(j.dump(2) + "\n", bundle.target), CacheError);
}

TEST_CASE("malformed cache files are rejected with the failing field") {
    CacheBundle bundle = quintic_bundle();
    std::string text = serialize_cache(bundle);

    CHECK_THROWS_AS(parse_cache("not json"), CacheError);

    json j = json::parse(text);
    j["schema"] = 2;
    CHECK_THROWS_AS(parse_cache(j.dump()), CacheError);

    j = json::parse(text);
    j.erase("convention");
    CHECK_THROWS_AS(parse_cache(j.dump()), CacheError);

    j = json::parse(text);
    j["one_point"]["1"][0] = "1.5";
    CHECK_THROWS_AS(parse_cache(j.dump()), CacheError);

    j = json::parse(text);
    j["one_point"]["1"][0] = "1/0";
    CHECK_THROWS_AS(parse_cache(j.dump()), CacheError);

    j = json::parse(text);
    j["two_point"].erase("1"); // degree 2 without degree 1
    CHECK_THROWS_AS(parse_cache(j.dump()), CacheError);

    j = json::parse(text);
    j["target"]["fingerprint"] = "n4;l;r4;f5;L1";
    CHECK_THROWS_AS(parse_cache(j.dump()), CacheError);
}

TEST_CASE("equivalence check recomputes everything and localizes mismatches") {
    CacheBundle bundle = quintic_bundle();
    EquivalenceReport ok = verify_cache_equivalence(bundle);
    CHECK(ok.ok);
    for (const auto& line : ok.lines) {
        INFO(line);
        CHECK(line.rfind("FAIL", 0) != 0);
    }

    bundle.two_point.at(2)[3][5] += 1;
    EquivalenceReport bad = verify_cache_equivalence(bundle);
    CHECK_FALSE(bad.ok);
    bool located = false;
    for (const auto& line : bad.lines)
        if (line.rfind("FAIL", 0) == 0 && line.find("two_point degree 2") != std::string::npos &&
            line.find("(3,5)") != std::string::npos)
            located = true;
    CHECK(located);
}

TEST_CASE("cli prints the quintic multiplication table") {
    RunResult res = run_cli("qh --ambient 6 --degrees 5");
    CHECK(res.exit_code == 0);
    CHECK(res.output == "H*1 = H\n"
                        "H*H = H^2 + 120q\n"
                        "H*H^2 = H^3 + 770qH\n"
                        "H*H^3 = H^4 + 1345qH^2 + 211200q^2\n"
                        "H*H^4 = H^5 + 770qH^3 + 692500q^2H\n"
                        "H*H^5 = 120qH^4 + 211200q^2H^2 + 31320000q^3\n");
}

TEST_CASE("cli machine table parses back to the computed ring") {
    RunResult res = run_cli("qh --ambient 6 --degrees 5 --format machine");
    REQUIRE(res.exit_code == 0);
    json root = json::parse(res.output);
    CHECK(root["convention"] == kConventionVersion);
    CHECK(root["target"]["fingerprint"] == "n6;l5;r5;f2;L5");

    Target t = validate_target(6, {5});
    OnePointTable one(t);
    TwoPointTable two(one);
    QuantumRing ring(two);

    REQUIRE(root["rows"].size() == 6);
    for (const auto& row : root["rows"]) {
        const int a = row["a"].get<int>();
        std::vector<std::vector<Rational>> table(
            static_cast<std::size_t>(t.r) + 1,
            std::vector<Rational>(static_cast<std::size_t>(t.d_max) + 1, Rational(0)));
        for (const auto& term : row["terms"])
            table[term["h"].get<std::size_t>()][term["q"].get<std::size_t>()] =
                rational_from_string(term["c"].get<std::string>());
        const auto& prod = ring.product(1, a);
        for (int j = 0; j <= t.r; ++j)
            for (int d = 0; d <= t.d_max; ++d)
                CHECK(table[static_cast<std::size_t>(j)][static_cast<std::size_t>(d)] ==
                      prod[static_cast<std::size_t>(j)][d]);
    }

    // rendering is deterministic
    CHECK(run_cli("qh --ambient 6 --degrees 5 --format machine").output == res.output);
}

TEST_CASE("cli answers the worked examples") {
    CHECK(run_cli("count --ambient 6 --degrees 5 --through-two-points 3").output == "2088000\n");
    CHECK(run_cli("invariant --ambient 6 --degrees 5 --one 5 0 1").output == "600\n");
    CHECK(run_cli("invariant --ambient 6 --degrees 5 --two 2 4 0 1").output == "3850\n");
    CHECK(run_cli("invariant --ambient 6 --degrees 5 --npoint \"2:0,2:0,3:0 1\"").output ==
          "9975\n");

    RunResult off = run_cli("invariant --ambient 6 --degrees 5 --one 3 1 1");
    CHECK(off.exit_code == 0);
    CHECK(off.output.rfind("0", 0) == 0);
    CHECK(off.output.find("off-dimension") != std::string::npos);

    RunResult frac = run_cli("invariant --ambient 6 --degrees 5 --one 5 2 2 --format machine");
    CHECK(frac.exit_code == 0);
    json jf = json::parse(frac.output);
    CHECK(jf["value"] == "141750/1");
    CHECK(jf["in_dimension"] == true);
}

TEST_CASE("cli rejects a target with vanishing Fano index") {
    RunResult res = run_cli("qh --ambient 5 --degrees 5");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("error:") != std::string::npos);
    CHECK(res.output.find("index") != std::string::npos);
}

TEST_CASE("cli cache export, import, verify") {
    const auto path = tmp_path("fanoqc_test_cache.json");
    const auto path2 = tmp_path("fanoqc_test_cache_2.json");
    const auto bad_path = tmp_path("fanoqc_test_cache_bad.json");
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
    std::filesystem::remove(bad_path);

    const std::string target_args = "--ambient 6 --degrees 5";
    RunResult ex = run_cli("cache export " + target_args + " --max-degree 2 --max-points 3 --cache " +
                           path.string());
    REQUIRE(ex.exit_code == 0);

    RunResult im = run_cli("cache import " + target_args + " --cache " + path.string());
    CHECK(im.exit_code == 0);
    CHECK(im.output.find("spot identities ok") != std::string::npos);

    RunResult wrong = run_cli("cache import --ambient 4 --cache " + path.string());
    CHECK(wrong.exit_code == 1);
    CHECK(wrong.output.find("fingerprint") != std::string::npos);

    // a second export is byte-identical
    RunResult ex2 = run_cli("cache export " + target_args + " --max-degree 2 --max-points 3 --cache " +
                            path2.string());
    REQUIRE(ex2.exit_code == 0);
    std::ifstream f1(path), f2(path2);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK(!s1.empty());

    // corrupt one two-point value: verify localizes the disagreement
    json j = json::parse(s1);
    j["two_point"]["2"][3][5] = "528001/1";
    std::ofstream bad(bad_path);
    bad << j.dump(2) << "\n";
    bad.close();
    RunResult ver = run_cli("verify " + target_args + " --max-degree 1 --cache " + bad_path.string());
    CHECK(ver.exit_code == 1);
    CHECK(ver.output.find("FAIL") != std::string::npos);
    CHECK(ver.output.find("528001") != std::string::npos);

    RunResult good = run_cli("verify " + target_args + " --max-degree 1 --cache " + path.string());
    CHECK(good.exit_code == 0);
    CHECK(good.output.find("all checks passed") != std::string::npos);

    std::filesystem::remove(path);
    std::filesystem::remove(path2);
    std::filesystem::remove(bad_path);
}
