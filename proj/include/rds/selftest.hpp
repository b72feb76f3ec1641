#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rds {

struct SelfTestResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Quick desk-scale sweep of the library invariants (map round trips,
/// monotonicity, oddness, pathwise lemmas, cocycle and duality laws,
/// fixed-point exponents, sampler tail, survival bound). Deterministic in
/// `seed`.
std::vector<SelfTestResult> run_selftest(std::uint64_t seed);

}  // namespace rds
