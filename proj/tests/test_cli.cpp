// Drives the installed binary end to end. The test runner provides
// REGRETLAB_BIN (path to the executable) and REGRETLAB_FIXTURES (path to the
// shipped problem files).

#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

std::string bin() {
    const char* b = std::getenv("REGRETLAB_BIN");
    REQUIRE(b != nullptr);
    return b;
}

std::string fixture(const std::string& name) {
    const char* dir = std::getenv("REGRETLAB_FIXTURES");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

RunResult run(const std::string& args, const std::string& env = "") {
    std::string cmd = env.empty() ? "" : env + " ";
    cmd += bin() + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

const std::vector<std::string> kBuiltins = {
    "procrastination", "exam-table1", "exam-table1-normalized", "lost-cause",
    "p4c-counterexample"};

}  // namespace

TEST_CASE("validate accepts every shipped problem file") {
    std::vector<std::string> files = kBuiltins;
    files.push_back("singleton");
    for (const std::string& name : files) {
        INFO("fixture " << name);
        RunResult r = run("validate " + fixture(name + ".json"));
        CHECK(r.code == 0);
        CHECK(r.out.find("validate: PASS") != std::string::npos);
    }
}

TEST_CASE("broken problem files are rejected with the right exit code") {
    RunResult overlap = run("validate " + fixture("bad-overlap.json"));
    CHECK(overlap.code == 1);
    CHECK(overlap.out.find("coverage") != std::string::npos);

    RunResult flt = run("validate " + fixture("bad-float.json"));
    CHECK(flt.code == 2);
    CHECK(flt.out.find("/beliefs/0/weights") != std::string::npos);

    RunResult missing = run("validate " + fixture("no-such-file.json"));
    CHECK(missing.code == 2);
}

TEST_CASE("choose reproduces the worked decision problems") {
    RunResult exante =
        run("choose " + fixture("procrastination.json") + " --at root --menu constant");
    CHECK(exante.code == 0);
    CHECK(exante.out == "play,study 15\n");

    RunResult day2 =
        run("choose " + fixture("procrastination.json") + " --at play --menu feasible");
    CHECK(day2.code == 0);
    CHECK(day2.out == "play,play 5\n");

    RunResult p4c = run("choose " + fixture("p4c-counterexample.json") + " --at root");
    CHECK(p4c.code == 0);
    std::istringstream lines(p4c.out);
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    CHECK(rows.size() == 8);
    CHECK(rows.front() == "o10,o1,o1 15");
    for (const std::string& row : rows) {
        INFO(row);
        CHECK(row.substr(row.size() - 3) == " 15");
    }

    RunResult lost = run("choose " + fixture("lost-cause.json") + " --at root");
    CHECK(lost.code == 0);
    CHECK(lost.out == "left,right,left 2\n");

    CHECK(run("choose " + fixture("procrastination.json") + " --at nowhere").code == 2);
}

TEST_CASE("check reproduces the worked verdicts") {
    RunResult reversal =
        run("check " + fixture("exam-table1.json") + " --kind reversal --update prior");
    CHECK(reversal.code == 1);
    CHECK(reversal.out.find("history=hs") != std::string::npos);

    RunResult pooled =
        run("check " + fixture("procrastination.json") + " --kind reversal --menu constant");
    CHECK(pooled.code == 0);

    RunResult feasible = run("check " + fixture("procrastination.json") + " --kind reversal");
    CHECK(feasible.code == 1);
    CHECK(feasible.out.find("extension=hard/play") != std::string::npos);

    CHECK(run("check " + fixture("singleton.json") + " --kind sep").code == 0);
    CHECK(run("check " + fixture("singleton.json") + " --kind axioms").code == 0);
    CHECK(run("check " + fixture("singleton.json") + " --kind rect").code == 0);

    RunResult sep = run("check " + fixture("exam-table1.json") + " --kind sep");
    CHECK(sep.code == 1);
    CHECK(sep.out.find("lhs=18/25") != std::string::npos);
    CHECK(sep.out.find("rhs=9/5") != std::string::npos);

    // the axiom and sep verdicts disagree nowhere, even on a failing instance
    RunResult thm2 = run("check " + fixture("exam-table1.json") + " --kind thm2");
    CHECK(thm2.code == 0);
    CHECK(thm2.out.find("agreements=1") != std::string::npos);
    CHECK(thm2.out.find("sep_failures=1") != std::string::npos);
}

TEST_CASE("enumeration caps abort with their own exit code") {
    RunResult r = run("choose " + fixture("p4c-counterexample.json") + " --at root",
                      "REGRETLAB_CAPS=plans=2");
    CHECK(r.code == 3);
    CHECK(r.out.find("plans") != std::string::npos);

    RunResult ok = run("choose " + fixture("p4c-counterexample.json") + " --at root",
                       "REGRETLAB_CAPS=plans=100");
    CHECK(ok.code == 0);
}

TEST_CASE("json output is parseable and versioned") {
    RunResult report = run("check " + fixture("exam-table1.json") + " --kind thm2 --json");
    CHECK(report.code == 0);
    json jr = json::parse(report.out);
    CHECK(jr["schema"] == "regretlab-report/1");
    CHECK(jr["pass"] == true);

    RunResult choice =
        run("choose " + fixture("procrastination.json") + " --at root --menu constant --json");
    CHECK(choice.code == 0);
    json jc = json::parse(choice.out);
    CHECK(jc["chosen"][0]["label"] == "play,study");
    CHECK(jc["chosen"][0]["value"] == "15");
    CHECK(jc["rule"] == "minimax");

    RunResult validate = run("validate " + fixture("bad-overlap.json") + " --json");
    CHECK(validate.code == 1);
    json jv = json::parse(validate.out);
    CHECK(jv["pass"] == false);
    CHECK(jv["witnesses"][0]["what"] == "coverage");
}

TEST_CASE("export matches the shipped fixtures byte for byte") {
    for (const std::string& name : kBuiltins) {
        INFO("scenario " << name);
        RunResult r = run("export " + name);
        CHECK(r.code == 0);
        CHECK(r.out == read_file(fixture(name + ".json")));
    }
    CHECK(run("export secretary").code == 2);
}

TEST_CASE("generate is deterministic and made the singleton fixture") {
    RunResult a = run("generate --seed 5");
    RunResult b = run("generate --seed 5");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    RunResult s = run("generate --seed 2 --singleton");
    CHECK(s.code == 0);
    CHECK(s.out == read_file(fixture("singleton.json")));
}

TEST_CASE("usage errors exit with the i/o code") {
    CHECK(run("").code == 2);
    CHECK(run("choose " + fixture("procrastination.json")).code == 2);
    CHECK(run("check " + fixture("procrastination.json") + " --kind entropy").code == 2);
    CHECK(run("choose " + fixture("procrastination.json") + " --at root --rule sharpe").code ==
          2);
    CHECK(run("generate").code == 2);
}
