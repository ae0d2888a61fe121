#include "doctest.h"

#include "mnc/cli.hpp"
#include "mnc/errors.hpp"
#include "mnc/json_io.hpp"

#include <cstdio>
#include <fstream>

using namespace mnc;

namespace {

// Runs the installed binary; MNC_CLI_BIN comes from the build system.
std::pair<int, std::string> run_cli(const std::string& args) {
    std::string cmd = std::string(MNC_CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    int rc = pclose(pipe);
    return {WEXITSTATUS(rc), out};
}

std::string fixture(const std::string& name) { return std::string(MNC_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("family derive through the binary") {
    auto [rc, out] = run_cli("family derive " + fixture("takeuchi_r3.json"));
    CHECK(rc == 0);
    Json j = Json::parse(out);
    CHECK(j["status"] == "OK");
    CHECK(j["payload"]["J"]["3"] == Json::array({1, 2, 3}));
}

TEST_CASE("exit codes: FALSE is 0, input error is 2, resource is 3") {
    auto [rc1, out1] = run_cli("mnc member " + fixture("takeuchi_r2.json") + " " +
                               fixture("takeuchi_r2_wedge.json") + " --point 1,0");
    CHECK(rc1 == 0);
    CHECK(Json::parse(out1)["status"] == "FALSE");

    auto [rc2, out2] = run_cli("family derive /no/such/file.json");
    CHECK(rc2 == 2);
    CHECK(Json::parse(out2)["status"] == "INPUT_ERROR");

    auto [rc3, out3] = run_cli("unknowncmd");
    CHECK(rc3 == 2);

    // guard trip: dim limit forced to 1
    auto [rc4, out4] = run_cli("mnc describe " + fixture("takeuchi_r2.json") + " " +
                               fixture("takeuchi_r2_wedge.json") + " --guard dim=1");
    CHECK(rc4 == 3);
    CHECK(Json::parse(out4)["status"] == "RESOURCE");
}

TEST_CASE("payloads are deterministic byte for byte") {
    std::string args = "mnc describe " + fixture("takeuchi_r2.json") + " " +
                       fixture("takeuchi_r2_wedge.json");
    auto [rc1, out1] = run_cli(args);
    auto [rc2, out2] = run_cli(args);
    CHECK(rc1 == 0);
    CHECK(out1 == out2);

    std::string orc = "mnc oracle " + fixture("takeuchi_r2.json") + " " +
                      fixture("takeuchi_r2_wedge.json") + " --point 0,1 --seed 42";
    auto [rc3, out3] = run_cli(orc);
    auto [rc4, out4] = run_cli(orc);
    CHECK(rc3 == 0);
    CHECK(out3 == out4);
}

TEST_CASE("json payloads reparse to equal values") {
    auto [rc, out] = run_cli("stalk multicone " + fixture("takeuchi_r3.json") +
                             " --dir 1,1,1 --m 4");
    REQUIRE(rc == 0);
    Json j = Json::parse(out);
    PolySet s = polyset_from_json(j["payload"]["closed"]);
    Json again = polyset_to_json(s);
    CHECK(again == j["payload"]["closed"]);
}

TEST_CASE("fixtures run with filter") {
    auto [rc, out] = run_cli("fixtures run --dir " + std::string(MNC_FIXTURE_DIR) +
                             " --filter majima");
    CHECK(rc == 0);
    Json j = Json::parse(out);
    CHECK(j["status"] == "OK");
    for (const auto& f : j["payload"]["fixtures"])
        CHECK(f["name"].get<std::string>().find("majima") != std::string::npos);
}

TEST_CASE("svg emission") {
    std::string svg = std::string(MNC_BUILD_DIR) + "/multicone_test.svg";
    auto [rc, out] = run_cli("stalk multicone " + fixture("takeuchi_r3.json") +
                             " --dir 1,1,1 --m 4 --svg " + svg);
    CHECK(rc == 0);
    std::ifstream in(svg);
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(content.find("<svg") != std::string::npos);
}

TEST_CASE("library fixture runner reports missing directory as input error") {
    CHECK_THROWS_AS(run_fixtures("/no/such/dir", "", 0), InputError);
}
