#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "arrlab/configlib.hpp"

using namespace arrlab;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string out_path = "cli_test_stdout.tmp";
    std::string cmd = std::string(ARRLAB_CLI_PATH) + " " + args + " > " + out_path +
                      " 2> cli_test_stderr.tmp";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out_path);
    std::ostringstream buf;
    buf << f.rdbuf();
    r.out = buf.str();
    return r;
}

}  // namespace

TEST_CASE("build emits a loadable configuration") {
    RunResult r = run_cli("build --ceva 3 --dim 2");
    CHECK(r.code == 0);
    Configuration z = parse_configuration(r.out);
    CHECK(z.size() == 12);
    CHECK(z.field->m == 3);
}

TEST_CASE("build writes to a file with --out") {
    RunResult r = run_cli("build --generic 4 --dim 2 --out cli_test_cfg.tmp");
    CHECK(r.code == 0);
    Configuration z = load_configuration("cli_test_cfg.tmp");
    CHECK(z.size() == 4);
    std::remove("cli_test_cfg.tmp");
}

TEST_CASE("analyze reports the expected JSON fields") {
    RunResult r = run_cli("analyze --generic 4 --dim 2 --dmax 4 --format json");
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["size"] == 4);
    CHECK(j["seeds"] == nlohmann::json({42, 43, 44}));
    CHECK(j["splitting_type"] == nlohmann::json({1, 2}));
    CHECK(j["degrees"].size() == 4);
    CHECK(j.contains("unexpected_degrees"));
    CHECK(j.contains("free"));
}

TEST_CASE("identical invocations reproduce identical bytes") {
    std::string args = "analyze --generic 5 --dim 2 --dmax 4 --format json";
    CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("seed and samples flags change the seed list") {
    RunResult r = run_cli(
        "splitting --generic 4 --dim 2 --seed 7 --samples 2 --format json");
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["seeds"] == nlohmann::json({7, 8}));
    CHECK(j["splitting_type"] == nlohmann::json({1, 2}));
}

TEST_CASE("classify and exc table output") {
    RunResult r = run_cli("classify --ceva 3 --dim 2 --dmax 7");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("unexpected degrees: 5 6") != std::string::npos);
    RunResult e = run_cli("exc --ceva 2 --dim 2 --dmax 3 --format json");
    REQUIRE(e.code == 0);
    nlohmann::json j = nlohmann::json::parse(e.out);
    CHECK(j["degrees"].size() == 3);
    CHECK(j["degrees"][1]["d"] == 2);
}

TEST_CASE("free subcommand reports the verdict") {
    RunResult r = run_cli("free --ceva 2 --dim 2 --format json");
    REQUIRE(r.code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["free"] == true);
    CHECK(j["splitting_type"] == nlohmann::json({3, 5}));
    CHECK(j["c2"] == 15);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("analyze").code == 2);                 // no input at all
    CHECK(run_cli("analyze --no-such-flag").code == 2);  // unknown flag
    CHECK(run_cli("build --ceva 3 --generic 4").code == 2);
    CHECK(run_cli("classify no_such_file.json").code == 2);
    std::ofstream bad("cli_test_bad.tmp");
    bad << "{broken";
    bad.close();
    CHECK(run_cli("classify cli_test_bad.tmp").code == 2);
    std::remove("cli_test_bad.tmp");
}
