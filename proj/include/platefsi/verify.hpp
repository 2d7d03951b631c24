#ifndef PLATEFSI_VERIFY_HPP
#define PLATEFSI_VERIFY_HPP

#include <string>
#include <vector>

namespace platefsi {

// Fault-injection switches for the self-check suite. Either corruption must
// turn at least one check red; both default off for normal operation.
struct VerifyOptions {
    bool flip_corner_sign = false;
    bool transpose_flow_pairing = false;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double measure = 0.0;    // quantity compared against tolerance
    double tolerance = 0.0;
    std::string detail;
};

// Runs the full self-check battery on a fixed small discretization
// (4 sine modes, 2 macro-elements, l = 0.2). Deterministic.
std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace platefsi

#endif
