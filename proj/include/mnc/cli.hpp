#pragma once

#include <string>
#include <vector>

namespace mnc {

// JSON-driven command line: exit 0 = completed (including mathematical
// FALSE), 2 = input error, 3 = resource/inconclusive.
int cli_main(int argc, char** argv);

struct FixtureResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Golden fixtures plus seeded property suites. `filter` is a substring
// match on fixture names.
std::vector<FixtureResult> run_fixtures(const std::string& dir, const std::string& filter,
                                        unsigned long long seed);

}  // namespace mnc
