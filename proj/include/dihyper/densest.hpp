#pragma once

#include <map>
#include <vector>

namespace dihyper {

// One edge of a densest-subset instance: c is the (positive) contribution
// w_e * delta_e, members is the receiver set I_e ∩ U (incoming) or the giver
// set S_e ∩ U (outgoing). Members may include stationary vertices of U.
struct InstanceEdge {
    int edge_id = -1;
    double c = 0;
    std::vector<int> members;
};

// Candidate class U with its incoming/outgoing contributions. Stationary
// members never enter an optimizer: any X meeting them has density zero by
// definition, and solve() searches over the nonempty T-free subsets only.
struct DensestInstance {
    std::vector<int> vertices;        // U, ascending
    std::vector<int> stationary;      // U ∩ T, ascending
    std::map<int, double> omega;      // weights for U ∩ N
    std::vector<InstanceEdge> incoming;
    std::vector<InstanceEdge> outgoing;
    std::vector<double> history;      // densities of the levels this sub-instance came from

    bool is_stationary(int u) const;
};

enum class DensestMode { Max, Min };

struct DensestSolution {
    std::vector<int> P; // maximal optimizer, ascending
    double density = 0;
    DensestMode mode = DensestMode::Max;
};

// delta(X) for mode Max: (sum of c over incoming with members ⊆ X minus sum
// of c over outgoing with members ∩ X ≠ ∅) / omega(X), and 0 when X contains
// a stationary vertex. Mode Min evaluates the mirrored density delta~ whose
// incoming edges count on intersection and outgoing on containment.
double density(const DensestInstance& inst, const std::vector<int>& X, DensestMode mode);

// Exact optimizer over nonempty T-free X ⊆ U. Mode Max maximizes delta, mode
// Min minimizes delta~; the returned P is the inclusion-maximal optimizer
// (union of all optimizers). Dinkelbach ratio iteration over a
// project-selection min-cut.
DensestSolution solve(const DensestInstance& inst, DensestMode mode);

// Independent oracle: scans all 2^|U∩N| - 1 subsets. |U∩N| <= 20.
DensestSolution solve_by_enumeration(const DensestInstance& inst, DensestMode mode);

// Lexicographic order with earlier levels dominating. Returns -1, 0, or +1.
// Coordinates within eps are considered equal.
int lex_compare(const std::vector<double>& h1, const std::vector<double>& h2, double eps = 0.0);

} // namespace dihyper
