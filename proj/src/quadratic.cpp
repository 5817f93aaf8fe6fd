#include "dihyper/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dihyper {

EdgeDiscrepancy edge_discrepancy(const DirectedHypergraph& h, const OrderedPartition& sigma0,
                                 const DensityVector& f, int edge) {
    const Hyperedge& e = h.edges[edge];
    EdgeDiscrepancy d;
    d.edge = edge;
    int top = sigma0.class_of[e.tail[0]];
    double fmax = f[e.tail[0]];
    for (int u : e.tail) {
        top = std::max(top, sigma0.class_of[u]);
        fmax = std::max(fmax, f[u]);
    }
    int bot = sigma0.class_of[e.head[0]];
    double fmin = f[e.head[0]];
    for (int v : e.head) {
        bot = std::min(bot, sigma0.class_of[v]);
        fmin = std::min(fmin, f[v]);
    }
    for (int u : e.tail)
        if (sigma0.class_of[u] == top) d.S_e.push_back(u);
    for (int v : e.head)
        if (sigma0.class_of[v] == bot) d.I_e.push_back(v);
    d.delta = fmax - fmin;
    return d;
}

std::vector<EdgeDiscrepancy> edge_discrepancies(const DirectedHypergraph& h,
                                                const DensityVector& f, double tau) {
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    OrderedPartition sigma0 = induced_partition(f, tau);
    std::vector<EdgeDiscrepancy> out;
    out.reserve(h.edges.size());
    for (int e = 0; e < static_cast<int>(h.edges.size()); ++e)
        out.push_back(edge_discrepancy(h, sigma0, f, e));
    return out;
}

double quadratic_form(const DirectedHypergraph& h, const DensityVector& f) {
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    double q = 0;
    for (const auto& e : h.edges) {
        double fmax = f[e.tail[0]];
        for (int u : e.tail) fmax = std::max(fmax, f[u]);
        double fmin = f[e.head[0]];
        for (int v : e.head) fmin = std::min(fmin, f[v]);
        double d = fmax - fmin;
        if (d > 0) q += 0.5 * e.w * d * d;
    }
    return q;
}

double discrepancy_ratio(const DirectedHypergraph& h, const DensityVector& f) {
    if (h.has_stationary())
        throw std::invalid_argument("discrepancy ratio requires no stationary vertices");
    double denom = inner_product_omega(h, f, f);
    if (!(denom > 0)) throw std::invalid_argument("discrepancy ratio undefined for the zero vector");
    return 2 * quadratic_form(h, f) / denom;
}

std::vector<int> Permutation::ranks() const {
    std::vector<int> r(order.size());
    for (size_t i = 0; i < order.size(); ++i) r[order[i]] = static_cast<int>(i);
    return r;
}

Permutation make_permutation(std::vector<int> order) {
    std::vector<char> seen(order.size(), 0);
    for (int u : order) {
        if (u < 0 || u >= static_cast<int>(order.size()) || seen[u])
            throw std::invalid_argument("not a permutation of 0..n-1");
        seen[u] = 1;
    }
    return Permutation{std::move(order)};
}

bool is_consistent(const Permutation& sigma, const DensityVector& f, double tau) {
    if (sigma.order.size() != f.size()) return false;
    OrderedPartition p = induced_partition(f, tau);
    int prev = -1;
    for (int u : sigma.order) {
        if (p.class_of[u] < prev) return false;
        prev = p.class_of[u];
    }
    return true;
}

std::vector<double> grad_Q_sigma(const DirectedHypergraph& h, const DensityVector& f,
                                 const Permutation& sigma, double tau) {
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    for (int u = 0; u < h.n; ++u)
        if (!h.stationary_mask[u] && std::abs(h.omega[u] - 1.0) > 1e-12)
            throw std::invalid_argument("grad_Q_sigma requires unit weights on N");
    if (!is_consistent(sigma, f, tau))
        throw std::invalid_argument("permutation is not consistent with f");

    std::vector<int> rank = sigma.ranks();
    std::vector<double> grad(h.n, 0.0);
    for (const auto& e : h.edges) {
        int top = e.tail[0];
        for (int u : e.tail)
            if (rank[u] > rank[top]) top = u;
        int bot = e.head[0];
        for (int v : e.head)
            if (rank[v] < rank[bot]) bot = v;
        if (rank[top] <= rank[bot]) continue; // inactive under sigma
        double d = f[top] - f[bot];
        if (!h.stationary_mask[top]) grad[top] += e.w * d;
        if (!h.stationary_mask[bot]) grad[bot] -= e.w * d;
    }
    return grad;
}

} // namespace dihyper
