#include <catch2/catch_amalgamated.hpp>

#include <iostream>

#include "modframe/verify.hpp"

using namespace modframe;

TEST_CASE("full verification suite on the default configuration") {
    VerifyConfig cfg;  // L = 65536, dx = 1/1024, n_cap = 512, seed 0xC0FFEE
    const VerifyReport rep = run_verify(cfg);
    REQUIRE(rep.checks.size() == 15);

    for (const CheckResult& c : rep.checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  measured=" << c.measured
                  << " expected=" << c.expected << " tol=" << c.tolerance;
        if (!c.note.empty()) std::cout << "  (" << c.note << ")";
        std::cout << "\n";
        CHECK(c.pass);
    }
    REQUIRE(rep.all_pass());
}
