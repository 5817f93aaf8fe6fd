#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dihyper {

enum class WeightMode { Degree, Unit, Custom };

// A directed hyperedge: measure flows from tail to head. Tail and head are
// nonempty and may intersect.
struct Hyperedge {
    std::vector<int> tail;
    std::vector<int> head;
    double w = 1.0;
};

// Density vector f in R^V, indexed by dense vertex ids 0..n-1.
using DensityVector = std::vector<double>;

// Edge-weighted directed hypergraph with an optional set T of stationary
// vertices. Vertex weights omega are defined on N = V \ T only; stationary
// entries are held at zero. Immutable after construction.
struct DirectedHypergraph {
    int n = 0;
    std::vector<Hyperedge> edges;
    std::vector<int> stationary;    // sorted vertex ids
    WeightMode weight_mode = WeightMode::Degree;
    std::vector<double> omega;      // size n, 0.0 on stationary vertices
    std::vector<std::string> names; // empty unless the input used names

    bool is_stationary(int u) const { return stationary_mask.size() > static_cast<size_t>(u) && stationary_mask[u]; }
    bool has_stationary() const { return !stationary.empty(); }
    int num_free() const { return n - static_cast<int>(stationary.size()); }
    // Non-stationary vertices in ascending order.
    std::vector<int> free_vertices() const;

    std::vector<char> stationary_mask; // size n
};

// Validates invariants and computes omega for the requested mode.
DirectedHypergraph build_hypergraph(int n, std::vector<Hyperedge> edges,
                                    std::vector<int> stationary = {},
                                    WeightMode mode = WeightMode::Degree,
                                    const std::map<int, double>& custom_omega = {});

// <f,g>_omega = sum_{u in N} omega_u f_u g_u. Accepts vectors over V or over
// N (in ascending vertex order); both arguments must use the same indexing.
double inner_product_omega(const DirectedHypergraph& h, const DensityVector& f,
                           const DensityVector& g);
double norm_omega(const DirectedHypergraph& h, const DensityVector& f);

// phi_N = omega .* f on N, in ascending order of the free vertices.
std::vector<double> measure_vector(const DirectedHypergraph& h, const DensityVector& f);

struct CutReport {
    std::vector<int> S;
    double out_weight = 0; // w(boundary+(S))
    double in_weight = 0;  // w(boundary-(S))
    double phi_plus = 0;
    double phi_minus = 0;
    double phi = 0;
};

// Out-going/in-coming expansion of S. Requires T empty and nontrivial S.
CutReport expansion(const DirectedHypergraph& h, const std::vector<int>& S);

struct ExpansionResult {
    double phi_H = 0;
    std::vector<int> argmin;
};

// Exact phi_H by enumerating all S with omega(S) <= omega(V)/2.
ExpansionResult brute_force_phi_H(const DirectedHypergraph& h, int enumeration_cap = 20);

// JSON ingestion. See README for the schema. Throws std::invalid_argument on
// malformed input.
DirectedHypergraph load_hypergraph(const std::string& path);
DirectedHypergraph parse_hypergraph(const std::string& json_text);

} // namespace dihyper
