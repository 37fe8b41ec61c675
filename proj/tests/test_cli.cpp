// End-to-end runs of the fgi binary.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(FGI_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

json report(const Run& r) {
    json j = json::parse(r.out);
    j.erase("metadata");
    return j;
}

fs::path tmpdir() {
    auto d = fs::temp_directory_path() / ("fgi_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

std::string data(const std::string& name) { return std::string(FGI_SOURCE_DIR) + "/data/" + name; }

}  // namespace

TEST(Cli, RvecForConductorFive) {
    auto r = run("compute rvec -f 5");
    ASSERT_EQ(r.code, 0);
    auto j = report(r);
    std::map<std::string, long> rv;
    for (auto& c : j["exact"]["characters"]) rv[c["name"]] = c["r"];
    EXPECT_EQ(rv["chi(0)"], 1);
    EXPECT_EQ(rv["chi(2)"], 1);
    EXPECT_EQ(rv["chi(1)"], 0);
    EXPECT_EQ(rv["chi(3)"], 0);
}

TEST(Cli, ThetaAndJideal) {
    auto t = report(run("compute theta -f 3"));
    EXPECT_EQ(t["exact"]["theta"], (json{{"s1", "1/6"}, {"s2", "-1/6"}}));
    auto r = run("compute jideal -p 5 --subfield plus");
    ASSERT_EQ(r.code, 0);
    auto j = report(r);
    EXPECT_EQ(j["exact"]["basis"], (json::array({{{"s1", "1"}}, {{"s1", "1/2"}, {"s2", "1/2"}}})));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("verify --suite STICK_IDENT,RZERO -p 5").code, 0);
    EXPECT_EQ(run("verify --suite QNAT -p 5").code, 1);
    EXPECT_EQ(run("compute theta -f 5 --bits 64 --tol-exp -133").code, 2);
    EXPECT_EQ(run("compute nothing -f 5").code, 2);
    EXPECT_EQ(run("compute theta --conductor five").code, 2);
    EXPECT_EQ(run("verify --suite NOPE -p 5").code, 2);
    auto r = run("verify --suite CLCONT -p 23 --ell 3");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(report(r)["error"]["message"].get<std::string>().find("--classgroup"), std::string::npos);
}

TEST(Cli, PrecisionErrorIsReported) {
    auto j = report(run("compute theta -f 5 --bits 64 --tol-exp -133"));
    EXPECT_EQ(j["status"], "error");
    EXPECT_EQ(j["error"]["type"], "precision");
}

TEST(Cli, DeterministicWithoutMetadata) {
    for (const char* args : {"compute lvalues -p 7 --subfield plus", "verify --suite INDF,STARK_RAT -p 7 --subfield plus --seed 3",
                             "compute jideal -p 7 --subfield relative"}) {
        auto a = run(args), b = run(args);
        ASSERT_EQ(a.code, b.code) << args;
        EXPECT_EQ(report(a), report(b)) << args;
        EXPECT_EQ(run(std::string(args) + " --no-timestamp").out, run(std::string(args) + " --no-timestamp").out);
    }
}

TEST(Cli, UnitsRoundTrip) {
    auto d = tmpdir();
    auto f1 = (d / "u.json").string(), f2 = (d / "u2.json").string();
    ASSERT_EQ(run("export units -p 7 --subfield plus --out " + f1).code, 0);
    auto ing = run("ingest units --in " + f1);
    ASSERT_EQ(ing.code, 0);
    auto j = report(ing);
    EXPECT_EQ(j["exact"]["rank"], j["exact"]["expected_rank"]);
    ASSERT_EQ(run("export units -p 7 --subfield plus --provider file --units " + f1 + " --out " + f2).code, 0);
    auto a = json::parse(std::ifstream(f1)), b = json::parse(std::ifstream(f2));
    a.erase("provenance");
    b.erase("provenance");
    EXPECT_EQ(a, b);
    auto builtin = report(run("compute annihilator -p 7 --subfield plus"));
    auto file = report(run("compute annihilator -p 7 --subfield plus --provider file --units " + f1));
    EXPECT_EQ(builtin["exact"]["annihilator"], file["exact"]["annihilator"]);
    // wrong field for the requested computation
    EXPECT_EQ(run("compute annihilator -p 5 --subfield plus --provider file --units " + f1).code, 2);
    fs::remove_all(d);
}

TEST(Cli, ClassGroupRoundTripAndRejection) {
    auto d = tmpdir();
    auto f1 = (d / "cg.json").string();
    ASSERT_EQ(run("export classgroup --in " + data("classgroup_q23.json") + " --out " + f1).code, 0);
    auto a = json::parse(std::ifstream(f1)), b = json::parse(std::ifstream(data("classgroup_q23.json")));
    EXPECT_EQ(run("export classgroup --in " + f1 + " --out " + (d / "cg2.json").string()).code, 0);
    EXPECT_EQ(a, json::parse(std::ifstream(d / "cg2.json")));
    EXPECT_EQ(a["invariants"], b["invariants"]);
    auto ing = report(run("ingest classgroup --in " + f1));
    EXPECT_EQ(ing["exact"]["order"], "3");

    // Gal(Q(zeta_8)/Q) = {1,3,5,7}; two involutions that do not commute
    json bad = json::parse(R"({"format": "fgi-classgroup-1",
        "field": {"conductor": 8, "base": "Q", "kernel": [1]},
        "invariants": ["3", "3"],
        "action": [{"label": 3, "matrix": [["0", "1"], ["1", "0"]]},
                   {"label": 5, "matrix": [["-1", "0"], ["0", "1"]]}],
        "provenance": "hand-made counterexample"})");
    auto fb = (d / "bad.json").string();
    std::ofstream(fb) << bad.dump();
    auto r = run("ingest classgroup --in " + fb);
    EXPECT_EQ(r.code, 2);
    auto msg = report(r)["error"]["message"].get<std::string>();
    EXPECT_NE(msg.find("commute"), std::string::npos) << msg;

    bad.erase("provenance");
    std::ofstream(fb) << bad.dump();
    EXPECT_EQ(run("ingest classgroup --in " + fb).code, 2);
    fs::remove_all(d);
}

TEST(Cli, ClassGroupContainment) {
    auto r = run("verify --suite CLCONT -p 23 --ell 3 --subfield 1 --classgroup " + data("classgroup_q23.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(report(r)["checks"][0]["status"], "pass");
}
