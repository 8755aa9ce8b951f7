#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rangerenew {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    bool gating = true;
    double seconds = 0.0;
    std::string detail;
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> criteria;
    bool all_gating_pass = true;
};

// The full acceptance suite: exact oracle equivalences, analytic
// inequalities, desk-scale convergence checks, and the determinism contract.
// Tolerances are pinned in the implementation. When log is non-null, one
// PASS/FAIL line per criterion is written as soon as it finishes.
AcceptanceOutcome run_acceptance(std::uint64_t seed,
                                 std::ostream* log = nullptr);

} // namespace rangerenew
