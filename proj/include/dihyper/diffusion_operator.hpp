#pragma once

#include <cstdint>
#include <utility>

#include "dihyper/densest.hpp"
#include "dihyper/hypergraph.hpp"
#include "dihyper/partition.hpp"

namespace dihyper {

enum class DensestBackend { MinCut, Enumerate };

struct FirstDerivative {
    std::vector<double> f1; // df/dt, size n, zero on stationary vertices
    std::vector<double> L;  // L_omega f embedded into R^V: -f1 on N, 0 on T
};

// The unique density derivative under the diffusion rules: per equivalence
// class of sigma_0 = ς(f), repeatedly extract the maximal densest subset
// (least densest once a stationary class settles at density zero).
FirstDerivative first_derivative(const DirectedHypergraph& h, const DensityVector& f,
                                 double tau = 1e-9,
                                 DensestBackend backend = DensestBackend::MinCut);

enum class EdgeStatus : int8_t { Inactive = -1, Ambiguous = 0, Active = 1 };

struct TowerLevel {
    std::vector<double> f;          // f^(i)
    OrderedPartition sigma;         // sigma_i
    std::vector<EdgeStatus> status; // per edge at level i
    std::vector<double> delta;      // Delta^(i)_e per edge, w.r.t. sigma_i
};

struct DerivativeTower {
    int k = 0;
    std::vector<TowerLevel> levels; // indices 0..k
};

// Derivatives f^(0..k) with their partitions and per-level edge statuses.
// Level 0 extraction uses the min-cut solver; higher levels rank candidate
// subsets by the lexicographic density vector across levels (frozen
// sub-instances), so classes there are capped at class_cap vertices.
DerivativeTower derivative_tower(const DirectedHypergraph& h, const DensityVector& f, int k,
                                 double tau = 1e-9, int class_cap = 20);

// Per-edge measure rates phi_u(e) realizing rules R0-R2 for the given f1.
struct FlowAssignment {
    std::vector<std::vector<std::pair<int, double>>> rates; // rates[e]: (vertex, rate)

    double rate(int edge, int vertex) const;
};

FlowAssignment flow_assignment(const DirectedHypergraph& h, const DensityVector& f,
                               const std::vector<double>& f1, double tau = 1e-9);

struct FlowResiduals {
    double r0 = 0; // max vertex imbalance |omega_u f1_u - sum_e phi_u(e)|
    double r1 = 0; // max rate violating the sign/support rule
    double r2 = 0; // max edge imbalance against w_e Delta_e
};

FlowResiduals check_flow_assignment(const DirectedHypergraph& h, const DensityVector& f,
                                    const std::vector<double>& f1, const FlowAssignment& fa,
                                    double tau = 1e-9);

// |  ||f1||_omega^2 + sum_{active e} w_e Delta^(0)_e Delta^(1)_e  |.
double norm_identity_residual(const DirectedHypergraph& h, const DensityVector& f,
                              const std::vector<double>& f1, double tau = 1e-9);

} // namespace dihyper
