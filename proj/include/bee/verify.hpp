#ifndef BEE_VERIFY_HPP
#define BEE_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bee {

struct VerifyOptions {
    std::size_t p_points = 500;     // grid over (0.001, 0.499), inclusive ends
    std::size_t rate_points = 100;  // rate grid per p over [0, 0.6]
    std::optional<double> single_p;
    std::uint64_t seed = 1;
    // Fault injection for exercising the harness itself: added to r1 in the
    // bound-consistency cross-check. Any nonzero value must make verification
    // fail; 0 is the honest run.
    double r1_offset = 0.0;
    // Shrinks the randomized instance counts; used by fast unit tests.
    bool quick = false;
};

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;  // first violating point or a short summary
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace bee

#endif
