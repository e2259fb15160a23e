#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf/checks.hpp"

using namespace hopf;

namespace {

void check_all_pass(const std::vector<SuiteResult>& results) {
    for (const auto& r : results) {
        INFO(r.name, " n=", r.n, " max_dev=", r.max_dev, " tol=", r.tolerance);
        CHECK(r.pass);
    }
}

} // namespace

TEST_CASE("algebra suites pass for every n") {
    CheckOptions opt;
    for (int n : {1, 2, 4, 8}) check_all_pass(verify_algebra(n, 500, opt));
}

TEST_CASE("clifford suites pass") {
    for (int n : {2, 4, 8}) check_all_pass(verify_clifford(n));
}

TEST_CASE("hopf suites pass") {
    CheckOptions opt;
    for (int n : {2, 4, 8}) check_all_pass(verify_hopf(n, 500, opt));
}

TEST_CASE("gauge suites pass") {
    CheckOptions opt;
    for (int n : {2, 4, 8}) check_all_pass(verify_gauge(n, 500, opt));
}

TEST_CASE("mechanics suites pass") {
    CheckOptions opt;
    for (int n : {2, 4, 8}) check_all_pass(verify_mechanics(n, 100, opt));
}

TEST_CASE("parallel and serial kernels agree exactly") {
    CheckOptions par, ser;
    par.parallel = true;
    ser.parallel = false;
    for (int n : {2, 8}) {
        const auto a = verify_algebra(n, 300, par);
        const auto b = verify_algebra(n, 300, ser);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].name == b[i].name);
            CHECK(a[i].max_dev == b[i].max_dev); // bitwise: per-trial RNG streams
            CHECK(a[i].pass == b[i].pass);
        }
        const auto ha = verify_hopf(n, 200, par);
        const auto hb = verify_hopf(n, 200, ser);
        REQUIRE(ha.size() == hb.size());
        for (std::size_t i = 0; i < ha.size(); ++i) {
            CHECK(ha[i].max_dev == hb[i].max_dev);
            for (const auto& [k, v] : ha[i].details) CHECK(hb[i].details.at(k) == v);
        }
    }
}

TEST_CASE("seed changes the sampled deviations but not the verdict") {
    CheckOptions a, b;
    a.seed = 1;
    b.seed = 2;
    const auto ra = verify_algebra(8, 400, a);
    const auto rb = verify_algebra(8, 400, b);
    bool any_diff = false;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(ra[i].pass == rb[i].pass);
        if (ra[i].max_dev != rb[i].max_dev) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("free flow conservation summary is deterministic") {
    LagrangianParams params;
    const ConservationSummary a = free_flow_conservation(4, 99, 10.0, 300, params, true);
    const ConservationSummary b = free_flow_conservation(4, 99, 10.0, 300, params, false);
    CHECK(a.max_i_rel_drift == b.max_i_rel_drift);
    CHECK(a.casimir_rel_drift == b.casimir_rel_drift);
    CHECK(a.redraws == b.redraws);
}
