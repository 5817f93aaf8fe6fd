#pragma once

#include "dihyper/hypergraph.hpp"
#include "dihyper/partition.hpp"

namespace dihyper {

// Per-edge discrepancy delta_e(f) = max_{u in tail} f_u - min_{v in head} f_v
// together with the argmax/argmin vertex sets (tie groups of sigma_0).
struct EdgeDiscrepancy {
    int edge = 0;
    double delta = 0;
    std::vector<int> S_e; // argmax subset of the tail
    std::vector<int> I_e; // argmin subset of the head
};

EdgeDiscrepancy edge_discrepancy(const DirectedHypergraph& h, const OrderedPartition& sigma0,
                                 const DensityVector& f, int edge);
std::vector<EdgeDiscrepancy> edge_discrepancies(const DirectedHypergraph& h,
                                                const DensityVector& f, double tau = 1e-9);

// Q(f) = 1/2 sum_e w_e ([delta_e(f)]^+)^2.
double quadratic_form(const DirectedHypergraph& h, const DensityVector& f);

// D(f) = 2 Q(f) / ||f||_omega^2. Requires V = N and f != 0.
double discrepancy_ratio(const DirectedHypergraph& h, const DensityVector& f);

// Total order on V, listed from lowest to highest rank.
struct Permutation {
    std::vector<int> order;

    std::vector<int> ranks() const; // ranks[v] = position of v in order
};

Permutation make_permutation(std::vector<int> order);

// sigma is consistent with f when f is non-decreasing along the order,
// i.e. sigma refines the ordered partition induced by f.
bool is_consistent(const Permutation& sigma, const DensityVector& f, double tau = 1e-9);

// Gradient of the tie-resolved quadratic form Q_sigma at f. Requires unit
// weights on N and sigma consistent with f. Returns a size-n vector whose
// stationary coordinates are identically zero.
std::vector<double> grad_Q_sigma(const DirectedHypergraph& h, const DensityVector& f,
                                 const Permutation& sigma, double tau = 1e-9);

} // namespace dihyper
