#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(COHO_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (fgets(buf.data(), buf.size(), p)) out += buf.data();
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("tables command exits 0 with all rows matching") {
    auto r = run("tables");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("| complex:E6 | 32 | 32 | 16 | 16 | yes |") != std::string::npos);
    CHECK(r.out.find(" NO ") == std::string::npos);
}

TEST_CASE("tables in json-lines parses per row") {
    auto r = run("tables --format=json-lines");
    CHECK(r.exit_code == 0);
    std::istringstream ss(r.out);
    std::string line;
    size_t rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        CHECK(j.at("v") == 1);
        CHECK(j.contains("form"));
        CHECK(j.contains("match"));
        ++rows;
    }
    CHECK(rows >= 70);
}

TEST_CASE("a corrupted descriptor directory exits 2") {
    auto dir = std::filesystem::temp_directory_path() / "coho_cli_bad";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "bad.json") << "{ broken";
    auto r = run("tables --data-dir " + dir.string());
    CHECK(r.exit_code == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("invariant queries") {
    SUBCASE("rg su(3,2) prints 2") {
        auto r = run("invariant rg \"su(3,2)\"");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("rg = 2") != std::string::npos);
    }
    SUBCASE("q0 sl(2,R) prints 1") {
        auto r = run("invariant q0 \"sl(2,R)\"");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("q0 = 1") != std::string::npos);
    }
    SUBCASE("rgmu sl(2,R) --mu=2 prints 1") {
        auto r = run("invariant rgmu \"sl(2,R)\" --mu=2");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("rgmu = 1") != std::string::npos);
    }
    SUBCASE("unknown form exits 2") {
        auto r = run("invariant rg \"sl(99,R)\"");
        CHECK(r.exit_code == 2);
    }
    SUBCASE("non-regular mu exits 3 naming the coroot") {
        auto r = run("invariant rgmu \"su(2,1)\" --mu=1,-1");
        CHECK(r.exit_code == 3);
        CHECK(r.out.find("coroot") != std::string::npos);
    }
    SUBCASE("rg beyond the default limit exits 3 suggesting --deep") {
        auto r = run("invariant rg \"E V\"");
        CHECK(r.exit_code == 3);
        CHECK(r.out.find("--deep") != std::string::npos);
        auto ok = run("--deep invariant rg \"E V\"");
        CHECK(ok.exit_code == 0);
        CHECK(ok.out.find("rg = 15") != std::string::npos);
    }
    SUBCASE("json-lines output parses") {
        auto r = run("invariant rg \"F II\" --format=json-lines");
        CHECK(r.exit_code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("value") == "4");
    }
}

TEST_CASE("langlands command") {
    SUBCASE("strictly dominant nu lands in P0") {
        auto r = run("langlands \"su(3,2)\" --nu=2,1");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("P = P0") != std::string::npos);
    }
    SUBCASE("negative cone lands in G") {
        auto r = run("langlands \"su(3,2)\" --nu=-2,-1");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("P = G") != std::string::npos);
    }
    SUBCASE("wrong dimension exits 2") {
        auto r = run("langlands \"su(3,2)\" --nu=1,2,3");
        CHECK(r.exit_code == 2);
    }
}

TEST_CASE("verify subcommand streams parseable reports and exits by status") {
    auto r = run("verify --suite=estimate0 --format=json-lines");
    CHECK(r.exit_code == 0);
    std::istringstream ss(r.out);
    std::string line;
    size_t n = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        CHECK(j.at("v") == 1);
        CHECK(j.at("status") == "pass");
        ++n;
    }
    CHECK(n == 27);
    auto bad = run("verify --suite=nonsense");
    CHECK(bad.exit_code == 2);
}
