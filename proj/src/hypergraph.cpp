#include "dihyper/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dihyper {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void check_range(const std::vector<int>& ids, int n, const char* what) {
    for (int u : ids) {
        if (u < 0 || u >= n)
            throw std::invalid_argument(std::string("vertex id out of range in ") + what +
                                        ": " + std::to_string(u));
    }
}

} // namespace

std::vector<int> DirectedHypergraph::free_vertices() const {
    std::vector<int> out;
    out.reserve(n - stationary.size());
    for (int u = 0; u < n; ++u)
        if (!stationary_mask[u]) out.push_back(u);
    return out;
}

DirectedHypergraph build_hypergraph(int n, std::vector<Hyperedge> edges,
                                    std::vector<int> stationary, WeightMode mode,
                                    const std::map<int, double>& custom_omega) {
    if (n <= 0) throw std::invalid_argument("vertex count must be positive");
    DirectedHypergraph h;
    h.n = n;
    h.weight_mode = mode;
    h.stationary = sorted_unique(std::move(stationary));
    check_range(h.stationary, n, "stationary");
    h.stationary_mask.assign(n, 0);
    for (int u : h.stationary) h.stationary_mask[u] = 1;
    if (static_cast<int>(h.stationary.size()) == n)
        throw std::invalid_argument("all vertices stationary; N must be nonempty");

    for (auto& e : edges) {
        if (e.tail.empty()) throw std::invalid_argument("empty tail");
        if (e.head.empty()) throw std::invalid_argument("empty head");
        if (!(e.w > 0)) throw std::invalid_argument("edge weight must be positive");
        check_range(e.tail, n, "tail");
        check_range(e.head, n, "head");
        e.tail = sorted_unique(std::move(e.tail));
        e.head = sorted_unique(std::move(e.head));
    }
    h.edges = std::move(edges);

    h.omega.assign(n, 0.0);
    switch (mode) {
    case WeightMode::Degree:
        for (const auto& e : h.edges) {
            std::set<int> incident(e.tail.begin(), e.tail.end());
            incident.insert(e.head.begin(), e.head.end());
            for (int u : incident)
                if (!h.stationary_mask[u]) h.omega[u] += e.w;
        }
        for (int u = 0; u < n; ++u)
            if (!h.stationary_mask[u] && !(h.omega[u] > 0))
                throw std::invalid_argument("degree-mode weight is zero for isolated vertex " +
                                            std::to_string(u));
        break;
    case WeightMode::Unit:
        for (int u = 0; u < n; ++u)
            if (!h.stationary_mask[u]) h.omega[u] = 1.0;
        break;
    case WeightMode::Custom:
        for (const auto& [u, w] : custom_omega) {
            if (u < 0 || u >= n) throw std::invalid_argument("omega id out of range");
            if (h.stationary_mask[u])
                throw std::invalid_argument("stationary vertex " + std::to_string(u) +
                                            " listed with custom weight");
            if (!(w > 0)) throw std::invalid_argument("vertex weight must be positive");
            h.omega[u] = w;
        }
        for (int u = 0; u < n; ++u)
            if (!h.stationary_mask[u] && !(h.omega[u] > 0))
                throw std::invalid_argument("missing custom weight for vertex " + std::to_string(u));
        break;
    }
    return h;
}

double inner_product_omega(const DirectedHypergraph& h, const DensityVector& f,
                           const DensityVector& g) {
    if (f.size() != g.size()) throw std::invalid_argument("dimension mismatch");
    const size_t nfree = static_cast<size_t>(h.num_free());
    double acc = 0;
    if (f.size() == static_cast<size_t>(h.n)) {
        for (int u = 0; u < h.n; ++u)
            if (!h.stationary_mask[u]) acc += h.omega[u] * f[u] * g[u];
    } else if (f.size() == nfree) {
        size_t i = 0;
        for (int u = 0; u < h.n; ++u)
            if (!h.stationary_mask[u]) { acc += h.omega[u] * f[i] * g[i]; ++i; }
    } else {
        throw std::invalid_argument("dimension mismatch");
    }
    return acc;
}

double norm_omega(const DirectedHypergraph& h, const DensityVector& f) {
    return std::sqrt(inner_product_omega(h, f, f));
}

std::vector<double> measure_vector(const DirectedHypergraph& h, const DensityVector& f) {
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    std::vector<double> phi;
    phi.reserve(h.num_free());
    for (int u = 0; u < h.n; ++u)
        if (!h.stationary_mask[u]) phi.push_back(h.omega[u] * f[u]);
    return phi;
}

CutReport expansion(const DirectedHypergraph& h, const std::vector<int>& S) {
    if (h.has_stationary())
        throw std::invalid_argument("expansion requires no stationary vertices");
    std::vector<int> s = S;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    check_range(s, h.n, "S");
    if (s.empty() || static_cast<int>(s.size()) == h.n)
        throw std::invalid_argument("S must be a nonempty proper subset of V");

    std::vector<char> in_s(h.n, 0);
    for (int u : s) in_s[u] = 1;

    CutReport rep;
    rep.S = std::move(s);
    for (const auto& e : h.edges) {
        bool tail_in = false, tail_out = false, head_in = false, head_out = false;
        for (int u : e.tail) (in_s[u] ? tail_in : tail_out) = true;
        for (int v : e.head) (in_s[v] ? head_in : head_out) = true;
        if (tail_in && head_out) rep.out_weight += e.w;
        if (tail_out && head_in) rep.in_weight += e.w;
    }
    double ws = 0;
    for (int u : rep.S) ws += h.omega[u];
    rep.phi_plus = rep.out_weight / ws;
    rep.phi_minus = rep.in_weight / ws;
    rep.phi = std::min(rep.phi_plus, rep.phi_minus);
    return rep;
}

ExpansionResult brute_force_phi_H(const DirectedHypergraph& h, int enumeration_cap) {
    if (h.has_stationary())
        throw std::invalid_argument("phi_H requires no stationary vertices");
    if (h.n > enumeration_cap)
        throw std::invalid_argument("enumeration cap exceeded: n = " + std::to_string(h.n));

    double total = 0;
    for (int u = 0; u < h.n; ++u) total += h.omega[u];
    const double half = total / 2 + 1e-12 * std::max(1.0, total);

    ExpansionResult best;
    best.phi_H = std::numeric_limits<double>::infinity();
    const uint32_t full = (h.n >= 32) ? 0 : (1u << h.n);
    for (uint32_t mask = 1; mask + 1 < full; ++mask) {
        double ws = 0;
        std::vector<int> s;
        for (int u = 0; u < h.n; ++u)
            if (mask & (1u << u)) { ws += h.omega[u]; s.push_back(u); }
        if (ws > half) continue;
        CutReport rep = expansion(h, s);
        if (rep.phi < best.phi_H) {
            best.phi_H = rep.phi;
            best.argmin = std::move(s);
        }
    }
    return best;
}

namespace {

using nlohmann::json;

int resolve_vertex(const json& j, const std::map<std::string, int>& name_to_id, int n) {
    if (j.is_number_integer()) {
        int u = j.get<int>();
        if (u < 0 || u >= n) throw std::invalid_argument("vertex id out of range: " + std::to_string(u));
        return u;
    }
    if (j.is_string()) {
        auto it = name_to_id.find(j.get<std::string>());
        if (it == name_to_id.end())
            throw std::invalid_argument("unknown vertex name: " + j.get<std::string>());
        return it->second;
    }
    throw std::invalid_argument("vertex reference must be an integer id or a name");
}

} // namespace

DirectedHypergraph parse_hypergraph(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }

    int n = 0;
    std::vector<std::string> names;
    std::map<std::string, int> name_to_id;
    if (j.contains("n")) {
        n = j.at("n").get<int>();
    } else if (j.contains("vertices")) {
        names = j.at("vertices").get<std::vector<std::string>>();
        n = static_cast<int>(names.size());
        for (int i = 0; i < n; ++i) {
            if (!name_to_id.emplace(names[i], i).second)
                throw std::invalid_argument("duplicate vertex name: " + names[i]);
        }
    } else {
        throw std::invalid_argument("input must define \"n\" or \"vertices\"");
    }
    if (n <= 0) throw std::invalid_argument("vertex count must be positive");

    std::vector<int> stationary;
    if (j.contains("stationary"))
        for (const auto& s : j.at("stationary")) stationary.push_back(resolve_vertex(s, name_to_id, n));

    WeightMode mode = WeightMode::Degree;
    if (j.contains("weight_mode")) {
        const std::string m = j.at("weight_mode").get<std::string>();
        if (m == "degree") mode = WeightMode::Degree;
        else if (m == "unit") mode = WeightMode::Unit;
        else if (m == "custom") mode = WeightMode::Custom;
        else throw std::invalid_argument("unknown weight_mode: " + m);
    }

    std::map<int, double> omega;
    if (mode == WeightMode::Custom) {
        if (!j.contains("omega")) throw std::invalid_argument("custom weight_mode requires \"omega\"");
        for (const auto& [key, val] : j.at("omega").items()) {
            int u;
            auto it = name_to_id.find(key);
            if (it != name_to_id.end()) u = it->second;
            else u = std::stoi(key);
            omega[u] = val.get<double>();
        }
    } else if (j.contains("omega")) {
        throw std::invalid_argument("\"omega\" is only allowed with custom weight_mode");
    }

    std::vector<Hyperedge> edges;
    if (j.contains("edges")) {
        for (const auto& je : j.at("edges")) {
            Hyperedge e;
            for (const auto& u : je.at("tail")) e.tail.push_back(resolve_vertex(u, name_to_id, n));
            for (const auto& v : je.at("head")) e.head.push_back(resolve_vertex(v, name_to_id, n));
            e.w = je.value("w", 1.0);
            edges.push_back(std::move(e));
        }
    }

    DirectedHypergraph h = build_hypergraph(n, std::move(edges), std::move(stationary), mode, omega);
    h.names = std::move(names);
    return h;
}

DirectedHypergraph load_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_hypergraph(ss.str());
}

} // namespace dihyper
