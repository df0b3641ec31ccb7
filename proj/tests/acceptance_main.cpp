#include <iostream>

#include "vdc/verify.hpp"

int main(int argc, char** argv) {
    vdc::verify::Options opts;
    if (argc > 1) opts.filter = argv[1];
    auto results = vdc::verify::run_suites(opts);
    bool ok = vdc::verify::report(results, std::cout);
    std::cout << (ok ? "ACCEPTANCE: all criteria passed\n" : "ACCEPTANCE: FAILURES\n");
    return ok ? 0 : 1;
}
