#pragma once

#include <random>

#include "dihyper/densest.hpp"
#include "dihyper/hypergraph.hpp"

namespace dihyper {

// Deterministic desk-scale instance builders for verification suites. Edge
// weights are dyadic rationals so density ties stay structural rather than
// floating-point accidents.

struct RandomGraphSpec {
    int n = 6;
    int num_edges = 8;
    int max_side = 3; // max tail/head cardinality
    int num_stationary = 0;
    WeightMode mode = WeightMode::Degree;
};

DirectedHypergraph random_hypergraph(std::mt19937_64& rng, const RandomGraphSpec& spec);

// Random density vector; with_ties rounds to a small lattice so equivalence
// classes of several vertices appear.
DensityVector random_density(std::mt19937_64& rng, int n, bool with_ties);

// Random solver instance with positive dyadic contributions; at most one
// stationary member when allow_stationary.
DensestInstance random_densest_instance(std::mt19937_64& rng, int max_universe,
                                        bool allow_stationary);

} // namespace dihyper
