// Verification battery: every criterion prints one pass/fail line and is
// asserted individually. The same battery backs `dihyper verify`.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "dihyper/acceptance.hpp"

using namespace dihyper;

namespace {

constexpr uint64_t kSeed = 20240817;

const std::vector<CriterionResult>& results() {
    static const std::vector<CriterionResult> r = run_acceptance(kSeed);
    return r;
}

void report(int id) {
    for (const auto& r : results()) {
        if (r.id != id) continue;
        std::printf("[%s] %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.detail.c_str());
        INFO(r.name, ": ", r.detail);
        CHECK(r.pass);
        return;
    }
    FAIL("criterion missing from the battery");
}

} // namespace

TEST_CASE("criterion 1: rayleigh identity") { report(1); }
TEST_CASE("criterion 2: kernel and conservation") { report(2); }
TEST_CASE("criterion 3: norm identity") { report(3); }
TEST_CASE("criterion 4: densest subset oracle") { report(4); }
TEST_CASE("criterion 5: flow assignment rules") { report(5); }
TEST_CASE("criterion 6: monotone descent") { report(6); }
TEST_CASE("criterion 7: cheeger sandwich") { report(7); }
TEST_CASE("criterion 8: eigenpair at convergence") { report(8); }
TEST_CASE("criterion 9: subgradient and mixture") { report(9); }
TEST_CASE("criterion 10: sssl optimum") { report(10); }
TEST_CASE("criterion 11: single-edge exact trajectory") { report(11); }
