#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace meancomp {

struct SelftestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Built-in invariant battery: symbolic derivatives vs finite differences,
// closed-form diagonal partials vs numeric differentiation of the mean,
// the minor-determinant identity, the "global inequality implies increasing
// comparison ratio" implication, the shared-weight four-way consistency,
// and the strict-mean bounds. Deterministic for a fixed seed.
std::vector<SelftestResult> run_selftest(std::uint64_t seed = 0x5eedf00dULL);

std::string selftest_text(const std::vector<SelftestResult>& results);
bool selftest_passed(const std::vector<SelftestResult>& results);

}  // namespace meancomp
