#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dihyper/hypergraph.hpp"

namespace dihyper {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full verification battery (11 criteria) with deterministic
// randomness derived from seed.
std::vector<CriterionResult> run_acceptance(uint64_t seed);

// Identity checks (Rayleigh, kernel, conservation, norm identity, flow
// rules; subgradient when stationary vertices are present) on one concrete
// hypergraph with randomized density vectors.
std::vector<CriterionResult> run_instance_checks(const DirectedHypergraph& h, uint64_t seed,
                                                 int trials = 25);

} // namespace dihyper
