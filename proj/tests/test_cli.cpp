// End-to-end runs of the installed command surface: worked evaluation
// values, scan exit codes and layouts, JSON/CSV shapes, checkpoint resume,
// worker determinism, and usage-error handling.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int code;
    std::string out;
};

CmdResult run_cli(const std::string& args) {
    const char* exe = std::getenv("GOLDBACH_CLI");
    if (exe == nullptr || *exe == '\0') {
        ADD_FAILURE() << "GOLDBACH_CLI is not set";
        return {-1, ""};
    }
    std::string cmd = std::string(exe) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        ADD_FAILURE() << "popen failed for: " << cmd;
        return {-1, ""};
    }
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string last_line(const std::string& s) {
    size_t end = s.find_last_not_of('\n');
    if (end == std::string::npos) return "";
    size_t start = s.rfind('\n', end);
    return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

TEST(Cli, EvalWorkedValues) {
    CmdResult spectrum = run_cli("eval spectrum --n 4 --p-limit-product 15 --k 1");
    EXPECT_EQ(spectrum.code, 0);
    EXPECT_EQ(spectrum.out, "1.61803398875\n");

    EXPECT_EQ(run_cli("eval count --n 4 --p-limit-product 15 --x 15/2").out, "1\n");
    EXPECT_EQ(run_cli("eval count --n 4 --p-limit-product 15 --x 7.5").out, "1\n");
    EXPECT_EQ(run_cli("eval count --n 4 --p-limit-product 15 --x 45").out, "9\n");
    EXPECT_EQ(run_cli("eval error --n 4 --p-limit-product 15 --x 41/2").out, "-2/5\n");
    EXPECT_EQ(run_cli("eval density --n 4 --z 4").out, "1/6\n");

    CmdResult json = run_cli("eval density --n 4 --z 4 --json");
    EXPECT_EQ(json.code, 0);
    nlohmann::json doc = nlohmann::json::parse(json.out);
    EXPECT_EQ(doc.at("kind").get<std::string>(), "eval");
    EXPECT_EQ(doc.at("value").get<std::string>(), "1/6");
}

TEST(Cli, EvalWitness) {
    CmdResult g = run_cli("eval witness --n 5");
    EXPECT_EQ(g.code, 0);
    EXPECT_EQ(g.out, "n=2 3+7\n");

    CmdResult t = run_cli("eval witness --n 1 --m 5");
    EXPECT_EQ(t.code, 0);
    EXPECT_EQ(t.out, "n=12 11+13\n");

    nlohmann::json doc = nlohmann::json::parse(run_cli("eval witness --n 1 --m 5 --json").out);
    EXPECT_TRUE(doc.at("found").get<bool>());
    EXPECT_EQ(doc.at("p_small").get<uint64_t>(), 11u);
    EXPECT_EQ(doc.at("m_param").get<uint64_t>(), 5u);
}

TEST(Cli, SingleScanVerdictsAndExitCodes) {
    CmdResult bad = run_cli("scan ubh --at 400");
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("N=400 p=13 violated worst_x=200/1 lhs=2 "
                           "rhs=688128000/446185740 margin=-486294/1062347\n"),
              std::string::npos);
    EXPECT_NE(bad.out.find("N=400 p=23 violated"), std::string::npos);
    EXPECT_EQ(last_line(bad.out), "violations: 2/6");

    CmdResult good = run_cli("scan ubh --at 315");
    EXPECT_EQ(good.code, 0);
    EXPECT_EQ(last_line(good.out), "violations: 0/5");
}

TEST(Cli, TwinScanWithWitness) {
    CmdResult r = run_cli("scan twin --n 1 --m 5");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
              "N=1 p=5 holds worst_x=18/1 lhs=0 rhs=108/60 margin=9/5\n"
              "witness n=12 11+13\n"
              "violations: 0/1\n");

    CmdResult csv = run_cli("scan twin --n 2 --m 7 --csv");
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out,
              "N,p,status,worst_x,lhs,rhs_num,rhs_den,margin\n"
              "2,5,holds,35/1,2,840,420,0/1\n"
              "2,7,holds,35/1,1,420,420,0/1\n");
}

TEST(Cli, RangeScanTextAndDeterminism) {
    CmdResult a = run_cli("scan ubh --from 312 --to 330");
    EXPECT_EQ(a.code, 1);
    EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "scan ubh from=312 to=330");
    EXPECT_EQ(last_line(a.out), "checked=19 holds=3 violated=16 vacuous=0 resumed=0");

    CmdResult b = run_cli("scan ubh --from 312 --to 330 --workers 3");
    EXPECT_EQ(b.code, 1);
    EXPECT_EQ(b.out, a.out);

    CmdResult j1 = run_cli("scan ubh --from 312 --to 318 --json");
    CmdResult j2 = run_cli("scan ubh --from 312 --to 318 --json --workers 2");
    EXPECT_EQ(j1.out, j2.out);
    nlohmann::json doc = nlohmann::json::parse(j1.out);
    EXPECT_EQ(doc.at("kind").get<std::string>(), "ubh_scan");
    EXPECT_EQ(doc.at("counts").at("checked").get<uint64_t>(), 7u);
    EXPECT_FALSE(doc.contains("wall_ms"));
}

TEST(Cli, CheckpointResumeAcrossInvocations) {
    fs::path path = fs::temp_directory_path() / "gb_cli_ckpt_test.tsv";
    fs::remove(path);
    std::string flag = " --checkpoint " + path.string() + " --checkpoint-stride 1";

    CmdResult first = run_cli("scan ubh --from 312 --to 320" + flag);
    EXPECT_EQ(first.code, 1);
    ASSERT_TRUE(fs::exists(path));

    CmdResult second = run_cli("scan ubh --from 312 --to 330" + flag);
    EXPECT_EQ(second.code, 1);
    EXPECT_EQ(last_line(second.out), "checked=19 holds=3 violated=16 vacuous=0 resumed=9");
    fs::remove(path);
}

TEST(Cli, VerifySuiteRuns) {
    CmdResult text = run_cli("verify --suite sets --max-p 210 --samples 4");
    EXPECT_EQ(text.code, 0);
    EXPECT_EQ(last_line(text.out), "suite sets: 7/7 checks passed");
    EXPECT_EQ(text.out.find("FAIL"), std::string::npos);

    nlohmann::json doc = nlohmann::json::parse(
        run_cli("verify --suite counting --max-p 210 --samples 4 --json").out);
    EXPECT_TRUE(doc.at("all_pass").get<bool>());
    EXPECT_EQ(doc.at("suite").get<std::string>(), "counting");
    EXPECT_FALSE(doc.at("checks").empty());
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run_cli("scan ubh --at 5 --from 3 --to 9").code, 2);
    EXPECT_EQ(run_cli("scan ubh --from 9 --to 3").code, 2);
    EXPECT_EQ(run_cli("scan ubh --at 400 --json --csv").code, 2);
    EXPECT_EQ(run_cli("scan ubh --at 20000000").code, 2);       // needs --slow-ok
    EXPECT_EQ(run_cli("scan twin --n 2 --m 4").code, 2);        // M below 2N+1
    EXPECT_EQ(run_cli("verify --suite bogus").code, 2);
    EXPECT_EQ(run_cli("eval error --n 4 --p-limit-product 15 --x 7").code, 2);
    EXPECT_EQ(run_cli("eval spectrum --n 4 --p-limit-product 15").code, 2);
    EXPECT_EQ(run_cli("eval count --n 4 --x 7/2").code, 2);
    EXPECT_EQ(run_cli("eval witness --n 3").code, 2);
}
