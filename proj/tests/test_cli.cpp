#include <catch2/catch.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "magicineq/report.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_path = "cli_stdout_" + std::to_string(counter++) + ".tmp";
    std::string cmd = std::string(MAGICINEQ_BINARY_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.stdout_text = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

} // namespace

TEST_CASE("identities subcommand: all pass, exit 0", "[cli]") {
    RunResult r = run_cli("identities --order 48");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.stdout_text);
    REQUIRE(j["certificates"].size() == 11);
    for (const auto& c : j["certificates"]) REQUIRE(c["status"] == "pass");
    REQUIRE(j["summary"]["pass"] == 11);
    REQUIRE(j["summary"]["fail"] == 0);
}

TEST_CASE("corrupted theta3 fixture: identities fail with exit 1", "[cli]") {
    RunResult r = run_cli("identities --order 16 --inject-theta3-defect");
    REQUIRE(r.exit_code == 1);
    auto j = nlohmann::json::parse(r.stdout_text);
    REQUIRE(j["summary"]["fail"].get<int>() >= 1);
}

TEST_CASE("report matches the published schema shape", "[cli][schema]") {
    RunResult r = run_cli("cancellations --order 32");
    REQUIRE(r.exit_code == 0);
    auto report = nlohmann::json::parse(r.stdout_text);
    auto schema = nlohmann::json::parse(slurp(MAGICINEQ_SCHEMA_PATH));

    // structural validation against the schema's required lists and types
    for (const auto& key : schema["required"]) REQUIRE(report.contains(key.get<std::string>()));
    REQUIRE(report["schema_version"] == schema["properties"]["schema_version"]["const"]);
    for (const auto& key : schema["properties"]["config"]["required"])
        REQUIRE(report["config"].contains(key.get<std::string>()));
    for (const auto& cert : report["certificates"])
        for (const auto& key : schema["properties"]["certificates"]["items"]["required"])
            REQUIRE(cert.contains(key.get<std::string>()));
    for (const auto& key : schema["properties"]["summary"]["required"])
        REQUIRE(report["summary"].contains(key.get<std::string>()));
}

TEST_CASE("eval subcommand", "[cli]") {
    SECTION("B at t = 1 passes") {
        RunResult r = run_cli("eval --which B --t 1 --order 64");
        REQUIRE(r.exit_code == 0);
        auto j = nlohmann::json::parse(r.stdout_text);
        REQUIRE(j["sign_certificates"][0]["status"] == "pass");
        REQUIRE(j["sign_certificates"][0]["target"] == "B>0");
    }

    SECTION("A at t = 7/3 passes") {
        RunResult r = run_cli("eval --which A --t 7/3 --order 64");
        REQUIRE(r.exit_code == 0);
    }

    SECTION("t = 0 is a usage error") {
        RunResult r = run_cli("eval --which A --t 0");
        REQUIRE(r.exit_code == 64);
    }

    SECTION("malformed t is a usage error") {
        RunResult r = run_cli("eval --which A --t not-a-number");
        REQUIRE(r.exit_code == 64);
    }

    SECTION("missing required options is a usage error") {
        RunResult r = run_cli("eval");
        REQUIRE(r.exit_code == 64);
    }
}

TEST_CASE("scan determinism: identical config gives identical bytes", "[cli][scan]") {
    std::string f1 = "scan_a.tsv", f2 = "scan_b.tsv";
    RunResult r1 = run_cli("scan --min 1/2 --max 2 --steps 5 --order 64 --format tsv --output " + f1);
    RunResult r2 = run_cli("scan --min 1/2 --max 2 --steps 5 --order 64 --format tsv --output " + f2);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    std::string a = slurp(f1), b = slurp(f2);
    REQUIRE(!a.empty());
    REQUIRE(a == b);
    // fixed column order
    REQUIRE(a.rfind("t_num\tt_den\tA_status", 0) == 0);
    std::remove(f1.c_str());
    std::remove(f2.c_str());

    std::string j1 = "scan_a.json", j2 = "scan_b.json";
    run_cli("scan --min 1/2 --max 2 --steps 3 --order 64 --output " + j1);
    run_cli("scan --min 1/2 --max 2 --steps 3 --order 64 --output " + j2);
    REQUIRE(slurp(j1) == slurp(j2));
    auto j = nlohmann::json::parse(slurp(j1));
    REQUIRE(j["grid"].size() == 3);
    REQUIRE(j["timing"].is_null());
    std::remove(j1.c_str());
    std::remove(j2.c_str());
}

TEST_CASE("lemmas and typo subcommands", "[cli]") {
    RunResult lem = run_cli("lemmas --precision 128");
    REQUIRE(lem.exit_code == 0);
    auto j = nlohmann::json::parse(lem.stdout_text);
    REQUIRE(j["certificates"].size() == 3);

    RunResult typo = run_cli("typo --order 16");
    REQUIRE(typo.exit_code == 0);
    auto jt = nlohmann::json::parse(typo.stdout_text);
    std::string evidence = jt["certificates"][0]["evidence"];
    REQUIRE(evidence.find("1007616") != std::string::npos);
    REQUIRE(evidence.find("10007616") != std::string::npos);
}

TEST_CASE("paper table prints the golden expansions", "[cli]") {
    RunResult r = run_cli("--paper-table");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.stdout_text.find("28800*pi^2 q^4") != std::string::npos);
    REQUIRE(r.stdout_text.find("20480 q^3") != std::string::npos);
    REQUIRE(r.stdout_text.find("480*pi*i*z + 960") != std::string::npos);
    REQUIRE(r.stdout_text.find("-28800*pi^2*z^2 + 123840*pi*i*z + 123840") != std::string::npos);
    REQUIRE(r.stdout_text.find("- 1007616 q^5") != std::string::npos);
}

TEST_CASE("usage errors", "[cli]") {
    REQUIRE(run_cli("").exit_code == 64);
    REQUIRE(run_cli("no-such-command").exit_code == 64);
    REQUIRE(run_cli("identities --order 4").exit_code == 64);    // below the N >= 16 floor
    REQUIRE(run_cli("identities --precision 16").exit_code == 64);
    REQUIRE(run_cli("--help").exit_code == 0);
    REQUIRE(run_cli("--version").exit_code == 0);
}

TEST_CASE("exit status is derived solely from summary counts", "[cli][report]") {
    magicineq::Report report;
    magicineq::Certificate c;
    c.id = "x";
    c.status = magicineq::Status::Pass;
    report.certificates.push_back(c);
    REQUIRE(report.exit_code() == 0);
    c.status = magicineq::Status::Inconclusive;
    report.certificates.push_back(c);
    REQUIRE(report.exit_code() == 2);
    c.status = magicineq::Status::Fail;
    report.certificates.push_back(c);
    REQUIRE(report.exit_code() == 1); // fail dominates inconclusive
}

TEST_CASE("precision can come from the environment", "[cli]") {
    RunResult r = run_cli("cancellations --order 24");
    REQUIRE(r.exit_code == 0);
    std::string cmd = std::string("MAGICINEQ_PRECISION=256 ") + MAGICINEQ_BINARY_PATH +
                      " cancellations --order 24 > cli_env.tmp 2>/dev/null";
    int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    REQUIRE(WEXITSTATUS(rc) == 0);
    auto j = nlohmann::json::parse(slurp("cli_env.tmp"));
    REQUIRE(j["config"]["precision"] == 256);
    std::remove("cli_env.tmp");
}
