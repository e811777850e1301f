#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "slater/report.hpp"

using namespace slater::report;

namespace {

struct RunResult {
    std::string out;
    int exit_code;
};

RunResult run_cli(const std::string& args, bool raw = false) {
    const std::string cmd =
        (raw ? args : std::string(SLATER_CLI_PATH) + " " + args) + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {out, WEXITSTATUS(status)};
}

ReportRecord sample_record() {
    ReportRecord r;
    r.command = "identity pair-unit";
    r.inputs = {{"a", "0.21"}, {"b", "0.31"}, {"c", "0.41"}};
    r.per_term = {{"lhs", 0.73821459, 2.5e-9}, {"rhs", 0.73821459612291655, 0.0}};
    r.total = 0.73821459;
    r.oracle = 0.73821459612291655;
    r.passed = true;
    r.n_evals = 12345;
    return r;
}

}  // namespace

TEST_SUITE_BEGIN("report");

TEST_CASE("json round-trips byte-identically") {
    const std::string text = to_json(sample_record());
    const auto parsed = nlohmann::ordered_json::parse(text);
    CHECK(parsed.dump(2) + "\n" == text);
    CHECK(parsed["command"] == "identity pair-unit");
    CHECK(parsed["per_term"].size() == 2);
    CHECK(parsed["per_term"][0]["label"] == "lhs");
    CHECK(parsed.contains("oracle"));
    CHECK(parsed["passed"] == true);
    CHECK_FALSE(parsed.contains("wall_time_ms"));
}

TEST_CASE("csv has one row per term plus a TOTAL row") {
    const std::string text = to_csv(sample_record());
    CHECK(text == "label,value,err\n"
                  "lhs,0.73821459,2.5e-09\n"
                  "rhs,0.7382145961,0\n"
                  "TOTAL,0.73821459,2.5e-09\n");
}

TEST_CASE("table format mentions the verdict") {
    const std::string text = to_table(sample_record());
    CHECK(text.find("pass") != std::string::npos);
    CHECK(text.find("identity pair-unit") != std::string::npos);
}

TEST_CASE("cli json output is byte-identical for identical command and seed") {
    const std::string args =
        "--format json --no-timing --rel-tol 1e-6 reproduce identity-generic";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    // parsing and re-serializing reproduces the bytes
    const auto parsed = nlohmann::ordered_json::parse(a.out);
    CHECK(parsed.dump(2) + "\n" == a.out);
    CHECK(parsed["passed"] == true);
}

TEST_CASE("cli exit codes") {
    CHECK(run_cli("identity feynman-pair --a 1 --b 2 --format json --no-timing").exit_code == 0);
    CHECK(run_cli("reproduce no-such-table").exit_code == 2);
    CHECK(run_cli("identity k0x32 --a -1 --b 1 --c 1").exit_code == 2);
    CHECK(run_cli("verify --rep sigma --m 99").exit_code == 2);
    // informational negative control exits 0
    CHECK(run_cli("verify --rep schweber3 --m 4 --samples 2 --seed 1 --no-timing "
                  "--rel-tol 1e-4 --max-evals 200000")
              .exit_code == 0);
}

TEST_CASE("cli config file with flag precedence") {
    const char* path = "/tmp/slater_cli_config.json";
    {
        FILE* f = std::fopen(path, "w");
        REQUIRE(f != nullptr);
        std::fputs("{\"rel_tol\": 1e-4, \"max_evals\": 500000}\n", f);
        std::fclose(f);
    }
    // file value is used...
    const RunResult file_only = run_cli(std::string("--format json --no-timing --config ") +
                                        path + " reproduce identity-generic");
    CHECK(file_only.exit_code == 0);
    auto parsed = nlohmann::ordered_json::parse(file_only.out);
    CHECK(parsed["inputs"]["rel_tol"] == "0.0001");
    // ...unless a flag overrides it
    const RunResult flagged = run_cli(std::string("--format json --no-timing --config ") + path +
                                      " --rel-tol 1e-7 reproduce identity-generic");
    parsed = nlohmann::ordered_json::parse(flagged.out);
    CHECK(parsed["inputs"]["rel_tol"] == "1e-07");
    const RunResult missing = run_cli("--config /no/such/file.json reproduce identity-generic");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("cli rejects impossible rep/m combinations as usage errors") {
    CHECK(run_cli("verify --rep bridge --m 4 --samples 1").exit_code == 2);
}

TEST_CASE("cli reproduce with overridden parameters checks the closed form") {
    const RunResult r = run_cli("--format json --no-timing --rel-tol 1e-5 reproduce s3-reduced "
                                "--eta1 1 --eta12 1 --eta2 1");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::ordered_json::parse(r.out);
    CHECK(parsed["passed"] == true);
    // oracle is 16 pi^2 / 8 = 2 pi^2 at the symmetric point
    CHECK(std::abs(parsed["oracle"].get<double>() - 19.739208802178717) < 1e-12);
}

TEST_CASE("cli verify emits one record per sample plus a summary") {
    const RunResult r =
        run_cli("--format json --no-timing verify --rep sigma --m 2 --samples 3 --seed 9");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::ordered_json::parse(r.out);
    REQUIRE(parsed.is_array());
    CHECK(parsed.size() == 4);
    CHECK(parsed.back()["command"] == "verify summary");
    CHECK(parsed.back()["passed"] == true);
}

TEST_CASE("cli results are independent of the worker count") {
    // fixed pairwise reduction order: the same seed must give identical
    // bytes whether one or many workers evaluate the blocks
    const std::string cmd = " --format json --no-timing verify --rep sigma --m 5 --samples 1 "
                            "--rel-tol 1e-3 --tol 5e-3 --max-evals 4000000 --seed 3";
    const RunResult one = run_cli("env SLATER_KERNELS_THREADS=1 " + std::string(SLATER_CLI_PATH) +
                                  cmd,
                                  true);
    const RunResult two = run_cli("env SLATER_KERNELS_THREADS=2 " + std::string(SLATER_CLI_PATH) +
                                  cmd,
                                  true);
    CHECK(one.exit_code == 0);
    CHECK(one.out == two.out);
}

TEST_CASE("cli seed changes low-discrepancy outputs") {
    const std::string base = "--format json --no-timing verify --rep sigma --m 5 --samples 1 "
                             "--rel-tol 1e-3 --tol 5e-3 --max-evals 8000000 --seed ";
    const RunResult a = run_cli(base + "1");
    const RunResult b = run_cli(base + "2");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.out != b.out);
}

TEST_SUITE_END();
