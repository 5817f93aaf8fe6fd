#include "dihyper/generator.hpp"

#include <algorithm>
#include <set>

namespace dihyper {

namespace {

double dyadic(std::mt19937_64& rng, double lo, double hi, int denom = 16) {
    std::uniform_int_distribution<int> dist(static_cast<int>(lo * denom),
                                            static_cast<int>(hi * denom));
    return static_cast<double>(dist(rng)) / denom;
}

std::vector<int> random_subset(std::mt19937_64& rng, int n, int max_size,
                               const std::vector<int>* universe = nullptr) {
    int limit = universe ? static_cast<int>(universe->size()) : n;
    std::uniform_int_distribution<int> size_dist(1, std::min(max_size, limit));
    int size = size_dist(rng);
    std::set<int> out;
    std::uniform_int_distribution<int> pick(0, limit - 1);
    while (static_cast<int>(out.size()) < size)
        out.insert(universe ? (*universe)[pick(rng)] : pick(rng));
    return {out.begin(), out.end()};
}

} // namespace

DirectedHypergraph random_hypergraph(std::mt19937_64& rng, const RandomGraphSpec& spec) {
    std::vector<Hyperedge> edges;
    for (int e = 0; e < spec.num_edges; ++e) {
        Hyperedge he;
        he.tail = random_subset(rng, spec.n, spec.max_side);
        he.head = random_subset(rng, spec.n, spec.max_side);
        he.w = dyadic(rng, 0.5, 3.0);
        edges.push_back(std::move(he));
    }
    std::vector<int> stationary;
    if (spec.num_stationary > 0) {
        std::set<int> st;
        std::uniform_int_distribution<int> pick(0, spec.n - 1);
        while (static_cast<int>(st.size()) < spec.num_stationary &&
               static_cast<int>(st.size()) < spec.n - 1)
            st.insert(pick(rng));
        stationary.assign(st.begin(), st.end());
    }
    // Degree mode rejects isolated vertices; cover every free vertex with a
    // self-loop-style edge if needed.
    if (spec.mode == WeightMode::Degree) {
        std::vector<char> covered(spec.n, 0);
        for (const auto& e : edges) {
            for (int u : e.tail) covered[u] = 1;
            for (int v : e.head) covered[v] = 1;
        }
        for (int u = 0; u < spec.n; ++u) {
            if (covered[u]) continue;
            std::uniform_int_distribution<int> pick(0, spec.n - 1);
            int v = pick(rng);
            if (v == u) v = (v + 1) % spec.n;
            Hyperedge he;
            he.tail = {u, v};
            he.head = {u, v};
            he.w = dyadic(rng, 0.5, 2.0);
            edges.push_back(std::move(he));
        }
    }
    return build_hypergraph(spec.n, std::move(edges), std::move(stationary), spec.mode);
}

DensityVector random_density(std::mt19937_64& rng, int n, bool with_ties) {
    DensityVector f(n);
    if (with_ties) {
        std::uniform_int_distribution<int> lattice(-3, 3);
        for (double& x : f) x = lattice(rng) * 0.5;
    } else {
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (double& x : f) x = gauss(rng);
    }
    return f;
}

DensestInstance random_densest_instance(std::mt19937_64& rng, int max_universe,
                                        bool allow_stationary) {
    std::uniform_int_distribution<int> size_dist(2, max_universe);
    int nu = size_dist(rng);
    DensestInstance inst;
    for (int i = 0; i < nu; ++i) inst.vertices.push_back(i);
    std::bernoulli_distribution coin(0.5);
    int first_free = 0;
    if (allow_stationary && coin(rng)) {
        inst.stationary.push_back(0);
        first_free = 1;
    }
    for (int i = first_free; i < nu; ++i) inst.omega[i] = dyadic(rng, 0.5, 2.0);

    std::uniform_int_distribution<int> edge_count(0, nu + 2);
    int num_in = edge_count(rng), num_out = edge_count(rng);
    int next_id = 0;
    for (int e = 0; e < num_in; ++e) {
        InstanceEdge ie;
        ie.edge_id = next_id++;
        ie.c = dyadic(rng, 0.25, 2.0);
        ie.members = random_subset(rng, nu, 3, &inst.vertices);
        inst.incoming.push_back(std::move(ie));
    }
    for (int e = 0; e < num_out; ++e) {
        InstanceEdge ie;
        ie.edge_id = next_id++;
        ie.c = dyadic(rng, 0.25, 2.0);
        ie.members = random_subset(rng, nu, 3, &inst.vertices);
        inst.outgoing.push_back(std::move(ie));
    }
    return inst;
}

} // namespace dihyper
