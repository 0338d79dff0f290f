#include <array>
#include <cstdio>
#include <cstdlib>
#include <regex>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const char* bin = std::getenv("IITAKA_LAB_BIN");
    REQUIRE(bin != nullptr);
    std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string cfg(const std::string& name) {
    const char* dir = std::getenv("IITAKA_CFG_DIR");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

std::string strip_timing(const std::string& s) {
    return std::regex_replace(s, std::regex("\\s*\"timing_ms\": \\d+\\n"), "\n");
}

}  // namespace

TEST_CASE("exit code 0 with a well-formed report") {
    RunResult r = run("loci --config " + cfg("torsion.cfg"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"schema_version\": 1") != std::string::npos);
    CHECK(r.output.find("\"timing_ms\"") != std::string::npos);
}

TEST_CASE("exit code 2 on a malformed config") {
    CHECK(run("loci --config " + cfg("malformed.cfg")).exit_code == 2);
    CHECK(run("loci --config /does/not/exist.cfg").exit_code == 2);
    CHECK(run("verify mystery --config " + cfg("torsion.cfg")).exit_code == 2);
}

TEST_CASE("exit code 3 on an unsupported model") {
    CHECK(run("kodaira --config " + cfg("p3.cfg")).exit_code == 3);
}

TEST_CASE("exit code 4 under --require-stable") {
    CHECK(run("loci --require-stable --m-max 2 --config " + cfg("torsion3.cfg")).exit_code == 4);
    CHECK(run("loci --m-max 8 --config " + cfg("torsion3.cfg")).exit_code == 0);
}

TEST_CASE("exit code 5 when no power has sections") {
    CHECK(run("kodaira --config " + cfg("torsion.cfg")).exit_code == 5);
}

TEST_CASE("exit code 1 on a failing run") {
    // verify lemma requires a globally generated first power
    CHECK(run("verify lemma --config " + cfg("torsion.cfg")).exit_code == 1);
}

TEST_CASE("verify subcommands succeed end to end") {
    CHECK(run("verify torsion --config " + cfg("torsion.cfg")).exit_code == 0);
    CHECK(run("verify double-cover --config " + cfg("double_cover.cfg")).exit_code == 0);
    CHECK(run("verify euler --config " + cfg("double_cover.cfg")).exit_code == 0);
    CHECK(run("verify abelian --config " + cfg("torsion.cfg")).exit_code == 0);
}

TEST_CASE("reports are byte-identical across runs modulo the timing field") {
    for (const std::string& invocation :
         {"loci --config " + cfg("torsion.cfg"), "classify --config " + cfg("torsion.cfg"),
          "kodaira --config " + cfg("double_cover.cfg"),
          "verify double-cover --config " + cfg("double_cover.cfg")}) {
        RunResult a = run(invocation);
        RunResult b = run(invocation);
        CHECK(a.exit_code == b.exit_code);
        CHECK(strip_timing(a.output) == strip_timing(b.output));
    }
}
