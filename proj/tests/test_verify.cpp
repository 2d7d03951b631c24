#include <doctest.h>

#include <algorithm>

#include "platefsi/verify.hpp"

using namespace platefsi;

namespace {

const CheckResult& find(const std::vector<CheckResult>& results,
                        const std::string& name) {
    auto it = std::find_if(results.begin(), results.end(),
                           [&](const CheckResult& r) { return r.name == name; });
    REQUIRE(it != results.end());
    return *it;
}

}  // namespace

TEST_CASE("the clean battery passes every check") {
    auto results = run_verification();
    CHECK(results.size() >= 13);
    for (const CheckResult& r : results) {
        INFO(r.name, " measure=", r.measure, " tol=", r.tolerance);
        CHECK(r.passed);
    }
    CHECK(all_passed(results));
}

TEST_CASE("a flipped corner sign is caught by energy-based checks") {
    VerifyOptions opt;
    opt.flip_corner_sign = true;
    auto results = run_verification(opt);
    CHECK(!all_passed(results));
    CHECK(!find(results, "oracle_equivalence").passed);
    CHECK(!find(results, "coercivity_gap").passed);
    // basis-level checks are untouched by assembly corruption
    CHECK(find(results, "sine_kronecker").passed);
    CHECK(find(results, "lagrange_partition_unity").passed);
    CHECK(find(results, "quadrature_exactness").passed);
}

TEST_CASE("a transposed flow pairing is caught by the orientation check") {
    VerifyOptions opt;
    opt.transpose_flow_pairing = true;
    auto results = run_verification(opt);
    CHECK(!all_passed(results));
    CHECK(!find(results, "oracle_equivalence").passed);
    CHECK(!find(results, "flow_orientation").passed);
    // the symmetrized identity alone cannot see a transposition: Y10 + Y10^T
    // is invariant, which is exactly why flow_orientation exists
    CHECK(find(results, "flow_skew_identity").passed);
    CHECK(find(results, "coercivity_gap").passed);
}
