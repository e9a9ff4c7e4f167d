#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
    int status;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(FPKS_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

json run_json(const std::string& args) {
    const Result r = run(args);
    EXPECT_EQ(r.status, 0) << args;
    return json::parse(r.out);
}

} // namespace

TEST(Cli, ThresholdReproducesWorkedExample) {
    const json j = run_json("threshold --delta 0.1 --family uniform-cap");
    EXPECT_NEAR(j["result"]["critical_epsilon"].get<double>(), 0.459, 1e-3);
    EXPECT_NEAR(j["result"]["critical_epsilon_degrees"].get<double>(), 26.3, 0.05);
    EXPECT_EQ(j["tool"]["name"], "fpks");
    EXPECT_EQ(j["config"]["command"], "threshold");
    EXPECT_EQ(j["config"]["delta"], 0.1);
}

TEST(Cli, KsCheckCoordinateTriadIsSatisfiable) {
    const json j = run_json("ks-check --set coordinate-triad");
    EXPECT_TRUE(j["result"]["colourability"]["satisfiable"].get<bool>());
    EXPECT_EQ(j["result"]["colourability"]["assignment"].size(), 3u);
    EXPECT_TRUE(j["result"]["assignment_verified"].get<bool>());
}

TEST(Cli, KsCheckPeresIsUnsatisfiable) {
    const json j = run_json("ks-check");
    EXPECT_FALSE(j["result"]["colourability"]["satisfiable"].get<bool>());
    EXPECT_TRUE(j["result"]["colourability"]["assignment"].is_null());
}

TEST(Cli, KsCheckReadsRayFiles) {
    const json j = run_json(std::string("ks-check --set-file ") + FPKS_DATA_DIR + "/peres33.rays");
    EXPECT_EQ(j["result"]["ks_set"]["rays"], 33);
    EXPECT_FALSE(j["result"]["colourability"]["satisfiable"].get<bool>());
}

TEST(Cli, Theorem1Conclusions) {
    EXPECT_EQ(run_json("theorem1 --family uniform-cap --epsilon 0.4 --delta 0.1 --set peres33")["result"]["conclusion"],
              "contradiction established");
    EXPECT_EQ(run_json("theorem1 --epsilon 1.0")["result"]["conclusion"], "hypotheses not met");
    EXPECT_EQ(run_json("theorem1 --set coordinate-triad")["result"]["conclusion"], "no contradiction (colourable)");
}

TEST(Cli, AlphasAgreeWithClosedForm) {
    const json j = run_json("alphas --epsilon 0.3");
    EXPECT_LT(j["result"]["max_abs_difference"].get<double>(), 1e-9);
    EXPECT_NEAR(j["result"]["closed_form"]["alpha4"].get<double>(), 0.9560014321934817, 1e-15);
}

TEST(Cli, DegreesSwitch) {
    const json j = run_json("alphas --epsilon 26.3 --degrees");
    EXPECT_NEAR(j["config"]["epsilon"].get<double>(), 0.45902, 1e-4);
}

TEST(Cli, PovmEffectsAreComplexRowMajor) {
    const json j = run_json("povm --direction 0,0,1 --epsilon 0.3");
    const json& f = j["result"]["effects"]["0"];
    ASSERT_EQ(f.size(), 3u);
    EXPECT_NEAR(f[1][1][0].get<double>(), 0.9560014321934817, 1e-9);
    EXPECT_NEAR(f[1][1][1].get<double>(), 0.0, 1e-15);
    const json direct = run_json("povm --direction 1,2,3 --method direct --family truncated-gaussian");
    EXPECT_LT(direct["result"]["resolution_of_identity_residual"].get<double>(), 1e-10);
}

TEST(Cli, ColourTable) {
    const json j = run_json("colour --epsilon 0.3 --outcome 0");
    ASSERT_EQ(j["result"]["tripods"].size(), 1u);
    EXPECT_EQ(j["result"]["tripods"][0]["colours"], json::array({"AF", "AT", "AF"}));
}

TEST(Cli, SimulateIsReproducible) {
    const Result a = run("simulate --trials 5000 --seed 4 --state 0");
    const Result b = run("simulate --trials 5000 --seed 4 --state 0");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    const json j = json::parse(a.out);
    EXPECT_EQ(j["result"]["seed"], 4);
    EXPECT_EQ(j["result"]["generator"], "mt19937_64");
    EXPECT_EQ(j["result"]["trials"], 5000);
}

TEST(Cli, RationalWitness) {
    const json j = run_json("meyer-witness");
    EXPECT_EQ(j["result"]["non_rational_images"], 10);
    EXPECT_TRUE(j["result"]["violation_found"].get<bool>());
}

TEST(Cli, CsvAndTextFormats) {
    const Result csv = run("simulate --trials 1000 --format csv");
    EXPECT_EQ(csv.status, 0);
    EXPECT_EQ(csv.out.rfind("outcome,count,frequency,expected,z_score\n", 0), 0u);
    const Result text = run("threshold --format text");
    EXPECT_EQ(text.status, 0);
    EXPECT_NE(text.out.find("result.critical_epsilon: 0.459"), std::string::npos) << text.out;
}

TEST(Cli, ValidationErrorsExitWithTwo) {
    EXPECT_EQ(run("alphas --epsilon 4").status, 2);
    EXPECT_EQ(run("alphas --epsilon 0").status, 2);
    EXPECT_EQ(run("colour --delta 0.5").status, 2);
    EXPECT_EQ(run("simulate --trials 0").status, 2);
    EXPECT_EQ(run("ks-check --set nonexistent").status, 2);
    EXPECT_EQ(run("alphas --family cauchy").status, 2);
    EXPECT_EQ(run("povm --direction 0,0,0").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
    EXPECT_EQ(run("alphas --no-such-flag").status, 2);
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("threshold --delta 0").status, 2);
}

TEST(Cli, NonConvergenceExitsWithThree) {
    EXPECT_EQ(run("alphas --tolerance 1e-30 --theta-points 8").status, 3);
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(run("--help").status, 0); }
