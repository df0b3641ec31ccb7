#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vdc::verify {

struct CriterionResult {
    std::string name;
    bool pass = false;
    double seconds = 0;
    double limit_seconds = 0;
    std::string detail;
};

struct Options {
    std::uint64_t seed = 0x5eed0001;
    int threads = 0;           // 0 = VDC_THREADS or hardware
    std::string filter;        // run only criteria whose name contains this
    bool parallel = true;
};

// The consolidated acceptance suite; results come back sorted by name.
std::vector<CriterionResult> run_suites(const Options& opts);

// Pretty-print one line per criterion; returns true when everything passed.
bool report(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace vdc::verify
