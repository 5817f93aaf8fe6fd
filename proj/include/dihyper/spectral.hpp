#pragma once

#include <cstdint>

#include "dihyper/hypergraph.hpp"
#include "dihyper/trajectory.hpp"

namespace dihyper {

struct SpectralResult {
    double gamma2 = 0;
    DensityVector minimizer; // ||f||_omega = 1, <f,1>_omega = 0
    double residual = 0;     // ||L_omega f - gamma2 f||_omega
    CutReport sweep;
};

// Estimates gamma2 = min_{f ⟂ 1} D(f) by diffusion descent: random starts
// orthogonal to 1, renormalized every step, best D kept across restarts.
// Restarts are independently seeded, so the result does not depend on the
// thread count.
SpectralResult estimate_gamma2(const DirectedHypergraph& h, int restarts,
                               const IntegratorConfig& config, uint64_t seed,
                               int threads = 1);

// Best prefix/suffix cut after sorting vertices by f; both tie orders tried.
CutReport sweep_cut(const DirectedHypergraph& h, const DensityVector& f);

// Derivative-free minimization of D over the subspace orthogonal to 1,
// independent of the diffusion code path: Nelder-Mead multistart seeded with
// recentred cut indicators.
double gamma2_oracle(const DirectedHypergraph& h, uint64_t seed, int restarts = 16);

struct CheegerReport {
    double phi_H = 0;
    std::vector<int> S;         // argmin cut
    double gamma2_estimate = 0; // via diffusion descent
    double gamma2_oracle = 0;   // via numeric minimization
    bool sandwich_ok = false;   // gamma2/2 - tol <= phi_H <= 2 sqrt(gamma2) + tol
};

CheegerReport cheeger_verify(const DirectedHypergraph& h, uint64_t seed,
                             int enumeration_cap = 20);

} // namespace dihyper
