#include "dihyper/densest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "dihyper/maxflow.hpp"

namespace dihyper {

namespace {

bool contains(const std::vector<int>& sorted, int u) {
    return std::binary_search(sorted.begin(), sorted.end(), u);
}

bool subset_of_mask(const std::vector<int>& members, const std::vector<char>& in_x) {
    for (int u : members)
        if (!in_x[u]) return false;
    return !members.empty();
}

bool intersects_mask(const std::vector<int>& members, const std::vector<char>& in_x) {
    for (int u : members)
        if (in_x[u]) return true;
    return false;
}

// Internal form used by the Dinkelbach solver: gains require all their
// members selected, penalties trigger on any member.
struct SelectionProblem {
    std::vector<int> universe;              // T-free candidates, ascending
    std::vector<double> weight;             // omega per universe index
    std::vector<std::pair<double, std::vector<int>>> gains;     // (c, member indices)
    std::vector<std::pair<double, std::vector<int>>> penalties; // (c, member indices)
    double scale = 1.0;
};

SelectionProblem build_selection(const DensestInstance& inst, DensestMode mode) {
    SelectionProblem sp;
    for (int u : inst.vertices)
        if (!inst.is_stationary(u)) sp.universe.push_back(u);
    std::map<int, int> index;
    for (size_t i = 0; i < sp.universe.size(); ++i) index[sp.universe[i]] = static_cast<int>(i);
    sp.weight.resize(sp.universe.size());
    for (size_t i = 0; i < sp.universe.size(); ++i) {
        auto it = inst.omega.find(sp.universe[i]);
        if (it == inst.omega.end() || !(it->second > 0))
            throw std::invalid_argument("missing or non-positive omega in densest instance");
        sp.weight[i] = it->second;
    }

    // In Max mode incoming edges are containment gains and outgoing edges
    // intersection penalties; Min mode mirrors the roles (minimizing delta~
    // equals maximizing the mirrored density with the sign flipped).
    const auto& gain_edges = (mode == DensestMode::Max) ? inst.incoming : inst.outgoing;
    const auto& pen_edges = (mode == DensestMode::Max) ? inst.outgoing : inst.incoming;

    for (const auto& e : gain_edges) {
        if (!(e.c > 0)) throw std::invalid_argument("instance edge contribution must be positive");
        std::vector<int> mem;
        bool blocked = e.members.empty();
        for (int u : e.members) {
            if (inst.is_stationary(u)) { blocked = true; break; }
            mem.push_back(index.at(u));
        }
        if (blocked) continue; // gain can never be realized by a T-free X
        sp.gains.emplace_back(e.c, std::move(mem));
        sp.scale = std::max(sp.scale, e.c);
    }
    for (const auto& e : pen_edges) {
        if (!(e.c > 0)) throw std::invalid_argument("instance edge contribution must be positive");
        std::vector<int> mem;
        for (int u : e.members)
            if (!inst.is_stationary(u)) mem.push_back(index.at(u));
        if (mem.empty()) continue; // only stationary members: never triggered
        sp.penalties.emplace_back(e.c, std::move(mem));
        sp.scale = std::max(sp.scale, e.c);
    }
    return sp;
}

double selection_density(const SelectionProblem& sp, const std::vector<char>& in_x) {
    double num = 0, wsum = 0;
    for (size_t i = 0; i < sp.universe.size(); ++i)
        if (in_x[i]) wsum += sp.weight[i];
    for (const auto& [c, mem] : sp.gains) {
        bool all = true;
        for (int i : mem)
            if (!in_x[i]) { all = false; break; }
        if (all) num += c;
    }
    for (const auto& [c, mem] : sp.penalties) {
        for (int i : mem)
            if (in_x[i]) { num -= c; break; }
    }
    return num / wsum;
}

// Maximal maximizer of num(X) - lambda * omega(X) over all X (possibly
// empty) via a project-selection min-cut.
std::vector<char> best_selection(const SelectionProblem& sp, double lambda, double* value) {
    const int nu = static_cast<int>(sp.universe.size());
    FlowNetwork net(nu + 2);
    const int s = nu, t = nu + 1;
    double budget = 0;
    for (int i = 0; i < nu; ++i) {
        double cost = lambda * sp.weight[i];
        if (cost >= 0) {
            net.add_arc(i, t, cost);
        } else {
            net.add_arc(s, i, -cost);
            budget += -cost;
        }
    }
    for (const auto& [c, mem] : sp.gains) {
        int g = net.add_node();
        net.add_arc(s, g, c);
        budget += c;
        for (int i : mem) net.add_arc(g, i, FlowNetwork::kInfiniteCapacity);
    }
    for (const auto& [c, mem] : sp.penalties) {
        int p = net.add_node();
        net.add_arc(p, t, c);
        for (int i : mem) net.add_arc(i, p, FlowNetwork::kInfiniteCapacity);
    }
    double cut = net.max_flow(s, t);
    if (value) *value = budget - cut;
    std::vector<char> side = net.min_cut_source_side(/*maximal=*/true);
    std::vector<char> in_x(nu, 0);
    for (int i = 0; i < nu; ++i) in_x[i] = side[i];
    return in_x;
}

DensestSolution finish(const SelectionProblem& sp, const std::vector<char>& in_x,
                       DensestMode mode) {
    DensestSolution sol;
    sol.mode = mode;
    for (int i = 0; i < static_cast<int>(sp.universe.size()); ++i)
        if (in_x[i]) sol.P.push_back(sp.universe[i]);
    double d = selection_density(sp, in_x);
    sol.density = (mode == DensestMode::Max) ? d : -d;
    return sol;
}

} // namespace

bool DensestInstance::is_stationary(int u) const { return contains(stationary, u); }

double density(const DensestInstance& inst, const std::vector<int>& X, DensestMode mode) {
    if (X.empty()) throw std::invalid_argument("density of the empty set is undefined");
    int maxid = 0;
    for (int u : inst.vertices) maxid = std::max(maxid, u);
    for (int u : X) {
        maxid = std::max(maxid, u);
        if (!contains(inst.vertices, u))
            throw std::invalid_argument("X is not a subset of the instance universe");
        if (inst.is_stationary(u)) return 0.0;
    }
    std::vector<char> in_x(maxid + 1, 0);
    for (int u : X) in_x[u] = 1;

    double num = 0, wsum = 0;
    for (int u : X) wsum += inst.omega.at(u);
    if (mode == DensestMode::Max) {
        for (const auto& e : inst.incoming)
            if (subset_of_mask(e.members, in_x)) num += e.c;
        for (const auto& e : inst.outgoing)
            if (intersects_mask(e.members, in_x)) num -= e.c;
    } else {
        for (const auto& e : inst.incoming)
            if (intersects_mask(e.members, in_x)) num += e.c;
        for (const auto& e : inst.outgoing)
            if (subset_of_mask(e.members, in_x)) num -= e.c;
    }
    return num / wsum;
}

DensestSolution solve(const DensestInstance& inst, DensestMode mode) {
    SelectionProblem sp = build_selection(inst, mode);
    if (sp.universe.empty())
        throw std::invalid_argument("densest instance has no non-stationary vertices");

    if (sp.gains.empty() && sp.penalties.empty()) {
        // Degenerate instance: every subset has density zero; maximality
        // picks the whole T-free universe.
        DensestSolution sol;
        sol.mode = mode;
        sol.P = sp.universe;
        sol.density = 0;
        return sol;
    }

    const double eps = 1e-13 * sp.scale;
    std::vector<char> current(sp.universe.size(), 1);
    double lambda = selection_density(sp, current);
    for (int iter = 0; iter < static_cast<int>(sp.universe.size() + sp.gains.size() +
                                               sp.penalties.size() + 8); ++iter) {
        double value = 0;
        std::vector<char> next = best_selection(sp, lambda, &value);
        bool nonempty = std::find(next.begin(), next.end(), char(1)) != next.end();
        if (!nonempty || value <= eps) {
            // lambda is optimal; the maximal cut side at lambda is the union
            // of all optimizers (falling back to the current iterate).
            if (nonempty) current = next;
            return finish(sp, current, mode);
        }
        double lambda_next = selection_density(sp, next);
        current = next;
        if (lambda_next <= lambda + eps) return finish(sp, current, mode);
        lambda = lambda_next;
    }
    throw std::logic_error("Dinkelbach iteration failed to converge");
}

DensestSolution solve_by_enumeration(const DensestInstance& inst, DensestMode mode) {
    std::vector<int> universe;
    for (int u : inst.vertices)
        if (!inst.is_stationary(u)) universe.push_back(u);
    const int nu = static_cast<int>(universe.size());
    if (nu == 0) throw std::invalid_argument("densest instance has no non-stationary vertices");
    if (nu > 20) throw std::invalid_argument("enumeration cap exceeded");

    double best = 0;
    std::vector<uint32_t> ties;
    for (uint32_t mask = 1; mask < (1u << nu); ++mask) {
        std::vector<int> X;
        for (int i = 0; i < nu; ++i)
            if (mask & (1u << i)) X.push_back(universe[i]);
        double d = density(inst, X, mode);
        if (ties.empty()) {
            best = d;
            ties.push_back(mask);
            continue;
        }
        double tol = 1e-12 * std::max(1.0, std::abs(best));
        if (mode == DensestMode::Max ? d > best + tol : d < best - tol) {
            best = d;
            ties.assign(1, mask);
        } else if (std::abs(d - best) <= tol) {
            ties.push_back(mask);
        }
    }
    uint32_t u_mask = 0;
    for (uint32_t m : ties) u_mask |= m;
    DensestSolution sol;
    sol.mode = mode;
    sol.density = best;
    for (int i = 0; i < nu; ++i)
        if (u_mask & (1u << i)) sol.P.push_back(universe[i]);
    // The optimizers form a lattice, so their union is again an optimizer.
    double du = density(inst, sol.P, mode);
    if (std::abs(du - best) > 1e-9 * std::max(1.0, std::abs(best)))
        throw std::logic_error("union of optimizers is not an optimizer");
    return sol;
}

int lex_compare(const std::vector<double>& h1, const std::vector<double>& h2, double eps) {
    if (h1.size() != h2.size()) throw std::invalid_argument("history length mismatch");
    for (size_t i = 0; i < h1.size(); ++i) {
        if (h1[i] > h2[i] + eps) return 1;
        if (h1[i] < h2[i] - eps) return -1;
    }
    return 0;
}

} // namespace dihyper
