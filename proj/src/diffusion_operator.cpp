#include "dihyper/diffusion_operator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dihyper/maxflow.hpp"
#include "dihyper/quadratic.hpp"

namespace dihyper {

namespace {

// Working state of one (least-)densest subset recursion. Members of every
// edge are kept intersected with the current universe.
struct LevelEdge {
    int id = -1;
    double c = 0;
    std::vector<int> members;
};

struct ClassInstance {
    std::vector<int> verts; // current universe, ascending, may include T
    std::vector<LevelEdge> in;
    std::vector<LevelEdge> out;
};

struct Extraction {
    std::vector<int> verts;
    double value = 0;
    ClassInstance snapshot; // state the set was extracted from
};

std::vector<int> set_minus(const std::vector<int>& a, const std::vector<char>& drop) {
    std::vector<int> out;
    for (int u : a)
        if (!drop[u]) out.push_back(u);
    return out;
}

bool all_in(const std::vector<int>& members, const std::vector<char>& mask) {
    for (int u : members)
        if (!mask[u]) return false;
    return !members.empty();
}

bool any_in(const std::vector<int>& members, const std::vector<char>& mask) {
    for (int u : members)
        if (mask[u]) return true;
    return false;
}

// delta / delta~ of a T-free candidate marked in in_x, evaluated on an
// instance snapshot. wsum = omega(X).
double eval_density(const ClassInstance& ci, const std::vector<char>& in_x, double wsum,
                    DensestMode mode) {
    double num = 0;
    if (mode == DensestMode::Max) {
        for (const auto& e : ci.in)
            if (all_in(e.members, in_x)) num += e.c;
        for (const auto& e : ci.out)
            if (any_in(e.members, in_x)) num -= e.c;
    } else {
        for (const auto& e : ci.in)
            if (any_in(e.members, in_x)) num += e.c;
        for (const auto& e : ci.out)
            if (all_in(e.members, in_x)) num -= e.c;
    }
    return num / wsum;
}

void residual_after_extraction(ClassInstance& ci, const std::vector<char>& in_p,
                               DensestMode mode) {
    ci.verts = set_minus(ci.verts, in_p);
    std::vector<LevelEdge> in2, out2;
    for (auto& e : ci.in) {
        bool remove = (mode == DensestMode::Max) ? all_in(e.members, in_p)
                                                 : any_in(e.members, in_p);
        if (remove) continue;
        e.members = set_minus(e.members, in_p);
        in2.push_back(std::move(e));
    }
    for (auto& e : ci.out) {
        bool remove = (mode == DensestMode::Max) ? any_in(e.members, in_p)
                                                 : all_in(e.members, in_p);
        if (remove) continue;
        e.members = set_minus(e.members, in_p);
        out2.push_back(std::move(e));
    }
    ci.in = std::move(in2);
    ci.out = std::move(out2);
}

DensestInstance to_densest_instance(const ClassInstance& ci, const DirectedHypergraph& h) {
    DensestInstance inst;
    inst.vertices = ci.verts;
    for (int u : ci.verts) {
        if (h.is_stationary(u))
            inst.stationary.push_back(u);
        else
            inst.omega[u] = h.omega[u];
    }
    for (const auto& e : ci.in) inst.incoming.push_back({e.id, e.c, e.members});
    for (const auto& e : ci.out) inst.outgoing.push_back({e.id, e.c, e.members});
    return inst;
}

// Solves one level of the (least-)densest problem on the current instance.
// With no history the single-coordinate problem goes to the configured
// backend; otherwise candidates are ranked by the lexicographic vector
// (hist levels first, current level last) over all nonempty T-free subsets.
struct LexSolution {
    std::vector<int> P;
    double value = 0; // current-level density of P
};

LexSolution lex_solve(const ClassInstance& ci, const DirectedHypergraph& h,
                      const std::vector<ClassInstance>& hist, DensestMode mode,
                      DensestBackend backend, int class_cap, int n) {
    if (hist.empty()) {
        DensestInstance inst = to_densest_instance(ci, h);
        DensestSolution sol = (backend == DensestBackend::MinCut)
                                  ? solve(inst, mode)
                                  : solve_by_enumeration(inst, mode);
        return {sol.P, sol.density};
    }

    std::vector<int> universe;
    for (int u : ci.verts)
        if (!h.is_stationary(u)) universe.push_back(u);
    const int nu = static_cast<int>(universe.size());
    if (nu > class_cap)
        throw std::invalid_argument("class size exceeds the enumeration cap at level >= 1");

    const double tie = 1e-11;
    std::vector<uint32_t> cands;
    cands.reserve((1u << nu) - 1);
    for (uint32_t m = 1; m < (1u << nu); ++m) cands.push_back(m);

    std::vector<char> in_x(n, 0);
    auto coord = [&](uint32_t mask, const ClassInstance& snap) {
        double wsum = 0;
        for (int i = 0; i < nu; ++i) {
            bool sel = mask & (1u << i);
            in_x[universe[i]] = sel;
            if (sel) wsum += h.omega[universe[i]];
        }
        double d = eval_density(snap, in_x, wsum, mode);
        for (int i = 0; i < nu; ++i) in_x[universe[i]] = 0;
        return d;
    };

    // Filter level by level, earlier levels dominating.
    double last_best = 0;
    for (size_t lvl = 0; lvl <= hist.size(); ++lvl) {
        const ClassInstance& snap = (lvl < hist.size()) ? hist[lvl] : ci;
        double best = (mode == DensestMode::Max) ? -std::numeric_limits<double>::infinity()
                                                 : std::numeric_limits<double>::infinity();
        std::vector<double> vals(cands.size());
        for (size_t i = 0; i < cands.size(); ++i) {
            vals[i] = coord(cands[i], snap);
            if (mode == DensestMode::Max)
                best = std::max(best, vals[i]);
            else
                best = std::min(best, vals[i]);
        }
        std::vector<uint32_t> kept;
        for (size_t i = 0; i < cands.size(); ++i)
            if (std::abs(vals[i] - best) <= tie * std::max(1.0, std::abs(best)))
                kept.push_back(cands[i]);
        cands = std::move(kept);
        last_best = best;
    }

    uint32_t u_mask = 0;
    for (uint32_t m : cands) u_mask |= m;
    LexSolution sol;
    for (int i = 0; i < nu; ++i)
        if (u_mask & (1u << i)) sol.P.push_back(universe[i]);
    // The union of lexicographic optimizers must itself be an optimizer.
    double du = coord(u_mask, ci);
    if (std::abs(du - last_best) > 1e-8 * std::max(1.0, std::abs(last_best)))
        throw std::logic_error("union of lexicographic optimizers is not an optimizer");
    sol.value = du;
    return sol;
}

// Runs the full extraction of one equivalence class: the densest-subset
// recursion of the derivative procedure, with the least-densest phase for
// classes holding a stationary vertex.
std::vector<Extraction> extract_class(ClassInstance ci, const DirectedHypergraph& h,
                                      const std::vector<ClassInstance>& hist,
                                      DensestBackend backend, int class_cap, double tau) {
    std::vector<Extraction> out;
    bool has_stat = false;
    for (int u : ci.verts)
        if (h.is_stationary(u)) has_stat = true;

    const int n = h.n;
    std::vector<char> in_p(n, 0);
    auto take = [&](std::vector<int> p, double value, DensestMode mode) {
        Extraction ex;
        ex.verts = p;
        ex.value = value;
        ex.snapshot = ci;
        out.push_back(std::move(ex));
        for (int u : p) in_p[u] = 1;
        residual_after_extraction(ci, in_p, mode);
        for (int u : p) in_p[u] = 0;
    };

    if (!has_stat) {
        while (!ci.verts.empty()) {
            if (ci.in.empty() && ci.out.empty()) {
                take(ci.verts, 0.0, DensestMode::Max);
                break;
            }
            LexSolution sol = lex_solve(ci, h, hist, DensestMode::Max, backend, class_cap, n);
            take(sol.P, sol.value, DensestMode::Max);
        }
        return out;
    }

    // Stationary class: extract strictly positive densest subsets, then
    // strictly negative least-densest subsets; whatever remains stays with
    // the stationary vertex at derivative zero.
    bool free_left = true;
    while (free_left) {
        free_left = false;
        for (int u : ci.verts)
            if (!h.is_stationary(u)) free_left = true;
        if (!free_left) break;
        LexSolution sol = lex_solve(ci, h, hist, DensestMode::Max, backend, class_cap, n);
        if (sol.value > tau) {
            take(sol.P, sol.value, DensestMode::Max);
            continue;
        }
        break;
    }
    while (free_left) {
        LexSolution sol = lex_solve(ci, h, hist, DensestMode::Min, backend, class_cap, n);
        if (sol.value < -tau) {
            take(sol.P, sol.value, DensestMode::Min);
            free_left = false;
            for (int u : ci.verts)
                if (!h.is_stationary(u)) free_left = true;
            continue;
        }
        break;
    }
    // Terminal class: remaining vertices keep derivative zero.
    Extraction ex;
    ex.verts = ci.verts;
    ex.value = 0.0;
    ex.snapshot = ci;
    out.push_back(std::move(ex));
    return out;
}

// Builds per-class instances for one level: active edges land in the class
// holding their level-i argmin head set (incoming) / argmax tail set
// (outgoing), with contribution c = w_e * Delta^(i)_e.
struct LevelEdgeSets {
    std::vector<std::vector<int>> S; // per edge, argmax tail set under sigma
    std::vector<std::vector<int>> I; // per edge, argmin head set under sigma
};

LevelEdgeSets edge_sets_at(const DirectedHypergraph& h, const OrderedPartition& sigma) {
    LevelEdgeSets s;
    s.S.resize(h.edges.size());
    s.I.resize(h.edges.size());
    for (size_t e = 0; e < h.edges.size(); ++e) {
        const auto& edge = h.edges[e];
        int top = sigma.class_of[edge.tail[0]];
        for (int u : edge.tail) top = std::max(top, sigma.class_of[u]);
        int bot = sigma.class_of[edge.head[0]];
        for (int v : edge.head) bot = std::min(bot, sigma.class_of[v]);
        for (int u : edge.tail)
            if (sigma.class_of[u] == top) s.S[e].push_back(u);
        for (int v : edge.head)
            if (sigma.class_of[v] == bot) s.I[e].push_back(v);
    }
    return s;
}

std::vector<ClassInstance> build_instances(const DirectedHypergraph& h,
                                           const OrderedPartition& sigma,
                                           const LevelEdgeSets& sets,
                                           const std::vector<char>& active,
                                           const std::vector<double>& c) {
    std::vector<ClassInstance> inst(sigma.num_classes());
    for (int k = 0; k < sigma.num_classes(); ++k) inst[k].verts = sigma.classes[k];
    for (size_t e = 0; e < h.edges.size(); ++e) {
        if (!active[e]) continue;
        int ic = sigma.class_of[sets.I[e][0]];
        int sc = sigma.class_of[sets.S[e][0]];
        inst[ic].in.push_back({static_cast<int>(e), c[e], sets.I[e]});
        inst[sc].out.push_back({static_cast<int>(e), c[e], sets.S[e]});
    }
    return inst;
}

} // namespace

FirstDerivative first_derivative(const DirectedHypergraph& h, const DensityVector& f,
                                 double tau, DensestBackend backend) {
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    OrderedPartition sigma0 = induced_partition(f, tau);
    LevelEdgeSets sets = edge_sets_at(h, sigma0);

    std::vector<char> active(h.edges.size(), 0);
    std::vector<double> c(h.edges.size(), 0);
    for (size_t e = 0; e < h.edges.size(); ++e) {
        double fmax = f[h.edges[e].tail[0]];
        for (int u : h.edges[e].tail) fmax = std::max(fmax, f[u]);
        double fmin = f[h.edges[e].head[0]];
        for (int v : h.edges[e].head) fmin = std::min(fmin, f[v]);
        double d = fmax - fmin;
        active[e] = d > tau;
        c[e] = h.edges[e].w * d;
    }

    std::vector<ClassInstance> inst = build_instances(h, sigma0, sets, active, c);
    FirstDerivative res;
    res.f1.assign(h.n, 0.0);
    res.L.assign(h.n, 0.0);
    static const std::vector<ClassInstance> no_hist;
    for (auto& ci : inst) {
        for (const auto& ex : extract_class(std::move(ci), h, no_hist, backend, 20, tau))
            for (int u : ex.verts)
                if (!h.is_stationary(u)) res.f1[u] = ex.value;
    }
    for (int u = 0; u < h.n; ++u)
        if (!h.is_stationary(u)) res.L[u] = -res.f1[u];
    return res;
}

namespace {

std::vector<double> deltas_at(const DirectedHypergraph& h, const LevelEdgeSets& sets,
                              const std::vector<double>& f) {
    std::vector<double> d(h.edges.size());
    for (size_t e = 0; e < h.edges.size(); ++e)
        d[e] = f[sets.S[e][0]] - f[sets.I[e][0]];
    return d;
}

} // namespace

DerivativeTower derivative_tower(const DirectedHypergraph& h, const DensityVector& f, int k,
                                 double tau, int class_cap) {
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    if (k < 0) throw std::invalid_argument("order must be nonnegative");

    DerivativeTower tower;
    tower.k = k;

    TowerLevel lvl0;
    lvl0.f = f;
    lvl0.sigma = induced_partition(f, tau);
    LevelEdgeSets sets = edge_sets_at(h, lvl0.sigma);
    lvl0.delta = deltas_at(h, sets, f);
    lvl0.status.resize(h.edges.size());
    for (size_t e = 0; e < h.edges.size(); ++e)
        lvl0.status[e] = lvl0.delta[e] > tau    ? EdgeStatus::Active
                         : lvl0.delta[e] < -tau ? EdgeStatus::Inactive
                                                : EdgeStatus::Ambiguous;
    tower.levels.push_back(std::move(lvl0));

    // Per current class: the frozen instances this class was extracted from
    // at levels 0..i-1, used as the earlier coordinates of the lexicographic
    // density vector.
    struct TowerClass {
        std::vector<int> verts;
        std::vector<ClassInstance> hist;
    };
    std::vector<TowerClass> classes;
    for (const auto& cls : tower.levels[0].sigma.classes) classes.push_back({cls, {}});

    for (int level = 0; level < k; ++level) {
        const TowerLevel& cur = tower.levels[level];
        std::vector<char> active(h.edges.size(), 0);
        std::vector<double> c(h.edges.size(), 0);
        for (size_t e = 0; e < h.edges.size(); ++e) {
            active[e] = cur.status[e] == EdgeStatus::Active;
            c[e] = h.edges[e].w * cur.delta[e];
        }
        LevelEdgeSets cur_sets = edge_sets_at(h, cur.sigma);
        std::vector<ClassInstance> inst = build_instances(h, cur.sigma, cur_sets, active, c);

        std::vector<double> fnext(h.n, 0.0);
        std::vector<TowerClass> next_classes;
        for (const auto& tc : classes) {
            int ci_idx = cur.sigma.class_of[tc.verts[0]];
            DensestBackend backend =
                tc.hist.empty() ? DensestBackend::MinCut : DensestBackend::Enumerate;
            auto extractions = extract_class(std::move(inst[ci_idx]), h, tc.hist, backend,
                                             class_cap, tau);
            for (auto& ex : extractions) {
                if (ex.verts.empty()) continue;
                for (int u : ex.verts)
                    if (!h.is_stationary(u)) fnext[u] = ex.value;
                TowerClass child;
                child.verts = ex.verts;
                child.hist = tc.hist;
                child.hist.push_back(std::move(ex.snapshot));
                next_classes.push_back(std::move(child));
            }
        }

        TowerLevel nxt;
        nxt.f = fnext;
        nxt.sigma = refine_by(cur.sigma, fnext, tau);
        LevelEdgeSets nsets = edge_sets_at(h, nxt.sigma);
        nxt.delta = deltas_at(h, nsets, fnext);
        nxt.status.resize(h.edges.size());
        for (size_t e = 0; e < h.edges.size(); ++e) {
            if (cur.status[e] != EdgeStatus::Ambiguous)
                nxt.status[e] = cur.status[e];
            else
                nxt.status[e] = nxt.delta[e] > tau    ? EdgeStatus::Active
                                : nxt.delta[e] < -tau ? EdgeStatus::Inactive
                                                      : EdgeStatus::Ambiguous;
        }

        // Reattach class histories to the classes of sigma_{i+1}. Extracted
        // sets normally are these classes; merged near-ties inherit the
        // history of the part holding their lowest vertex.
        std::vector<TowerClass> remapped;
        for (const auto& cls : nxt.sigma.classes) {
            for (const auto& cand : next_classes) {
                if (std::binary_search(cand.verts.begin(), cand.verts.end(), cls[0])) {
                    remapped.push_back({cls, cand.hist});
                    break;
                }
            }
        }
        classes = std::move(remapped);
        tower.levels.push_back(std::move(nxt));
    }
    return tower;
}

double FlowAssignment::rate(int edge, int vertex) const {
    if (edge < 0 || edge >= static_cast<int>(rates.size())) return 0.0;
    for (const auto& [v, r] : rates[edge])
        if (v == vertex) return r;
    return 0.0;
}

FlowAssignment flow_assignment(const DirectedHypergraph& h, const DensityVector& f,
                               const std::vector<double>& f1, double tau) {
    if (f.size() != static_cast<size_t>(h.n) || f1.size() != static_cast<size_t>(h.n))
        throw std::invalid_argument("dimension mismatch");
    OrderedPartition sigma0 = induced_partition(f, tau);
    OrderedPartition sigma1 = refine_by(sigma0, f1, tau);
    LevelEdgeSets sets0 = edge_sets_at(h, sigma0);

    FlowAssignment fa;
    fa.rates.resize(h.edges.size());

    // Refined giver/receiver sets: within S_e(f) the vertices of maximal f1,
    // within I_e(f) those of minimal f1 (rule R1 at order one).
    struct Side {
        std::vector<int> members;
        int cls = -1;
        double c = 0;
    };
    std::vector<Side> givers(h.edges.size()), receivers(h.edges.size());
    std::vector<char> active(h.edges.size(), 0);
    for (size_t e = 0; e < h.edges.size(); ++e) {
        double fmax = f[h.edges[e].tail[0]];
        for (int u : h.edges[e].tail) fmax = std::max(fmax, f[u]);
        double fmin = f[h.edges[e].head[0]];
        for (int v : h.edges[e].head) fmin = std::min(fmin, f[v]);
        if (!(fmax - fmin > tau)) continue;
        active[e] = 1;
        double c = h.edges[e].w * (fmax - fmin);
        int top = sigma1.class_of[sets0.S[e][0]];
        for (int u : sets0.S[e]) top = std::max(top, sigma1.class_of[u]);
        int bot = sigma1.class_of[sets0.I[e][0]];
        for (int v : sets0.I[e]) bot = std::min(bot, sigma1.class_of[v]);
        for (int u : sets0.S[e])
            if (sigma1.class_of[u] == top) givers[e].members.push_back(u);
        for (int v : sets0.I[e])
            if (sigma1.class_of[v] == bot) receivers[e].members.push_back(v);
        givers[e].cls = top;
        receivers[e].cls = bot;
        givers[e].c = receivers[e].c = c;
    }

    double cscale = 1.0;
    for (size_t e = 0; e < h.edges.size(); ++e)
        if (active[e]) cscale = std::max(cscale, givers[e].c);

    for (int cls = 0; cls < sigma1.num_classes(); ++cls) {
        std::vector<int> supply_edges, demand_edges;
        for (size_t e = 0; e < h.edges.size(); ++e) {
            if (!active[e]) continue;
            if (receivers[e].cls == cls) supply_edges.push_back(static_cast<int>(e));
            if (givers[e].cls == cls) demand_edges.push_back(static_cast<int>(e));
        }
        const auto& members = sigma1.classes[cls];
        bool any_target = false;
        for (int u : members)
            if (!h.is_stationary(u) && std::abs(h.omega[u] * f1[u]) > 0) any_target = true;
        if (supply_edges.empty() && demand_edges.empty() && !any_target) continue;

        // Transportation feasibility: edge supplies and demands are exact
        // and each free vertex nets omega_u f1_u. All stationary members of
        // the class act as one absorber node that takes the remaining
        // slack; its per-edge flows are attributed to the edge's actual
        // stationary receivers/givers afterwards.
        std::map<int, int> idx;
        FlowNetwork net(0);
        const int s = net.add_node();
        const int t = net.add_node();
        int merged_stat = -1;
        for (int u : members) {
            if (h.is_stationary(u)) {
                if (merged_stat < 0) merged_stat = net.add_node();
                idx[u] = merged_stat;
            } else {
                idx[u] = net.add_node();
            }
        }

        double total_in = 0, total_out = 0;
        int arc_counter = 0;
        auto arc = [&](int a, int b, double cap) {
            net.add_arc(a, b, cap);
            return arc_counter++;
        };

        // per edge: (member vertex, arc id); stationary members share one arc
        std::vector<std::vector<std::pair<int, int>>> supply_arcs(supply_edges.size()),
            demand_arcs(demand_edges.size());
        for (size_t i = 0; i < supply_edges.size(); ++i) {
            int e = supply_edges[i];
            int node = net.add_node();
            arc(s, node, receivers[e].c);
            total_in += receivers[e].c;
            bool stat_done = false;
            for (int v : receivers[e].members) {
                if (h.is_stationary(v)) {
                    if (!stat_done)
                        supply_arcs[i].emplace_back(v, arc(node, merged_stat,
                                                           FlowNetwork::kInfiniteCapacity));
                    stat_done = true;
                } else {
                    supply_arcs[i].emplace_back(v, arc(node, idx.at(v),
                                                       FlowNetwork::kInfiniteCapacity));
                }
            }
        }
        for (size_t i = 0; i < demand_edges.size(); ++i) {
            int e = demand_edges[i];
            int node = net.add_node();
            arc(node, t, givers[e].c);
            total_out += givers[e].c;
            bool stat_done = false;
            for (int u : givers[e].members) {
                if (h.is_stationary(u)) {
                    if (!stat_done)
                        demand_arcs[i].emplace_back(u, arc(merged_stat, node,
                                                           FlowNetwork::kInfiniteCapacity));
                    stat_done = true;
                } else {
                    demand_arcs[i].emplace_back(u, arc(idx.at(u), node,
                                                       FlowNetwork::kInfiniteCapacity));
                }
            }
        }
        for (int u : members) {
            if (h.is_stationary(u)) continue;
            double b = h.omega[u] * f1[u];
            if (b > 0) {
                arc(idx.at(u), t, b);
                total_out += b;
            } else if (b < 0) {
                arc(s, idx.at(u), -b);
                total_in += -b;
            }
        }
        double slack = total_in - total_out; // what the absorber takes up
        if (merged_stat >= 0) {
            if (slack > 0) {
                arc(merged_stat, t, slack);
                total_out += slack;
            } else if (slack < 0) {
                arc(s, merged_stat, -slack);
                total_in += -slack;
            }
        } else if (std::abs(slack) > 1e-7 * cscale) {
            throw std::runtime_error("flow assignment: class imbalance without stationary vertex");
        }

        double need = std::min(total_in, total_out);
        double flow = net.max_flow(s, t);
        if (std::abs(flow - need) > 1e-8 * std::max(1.0, cscale))
            throw std::runtime_error("flow assignment infeasible");

        for (size_t i = 0; i < supply_edges.size(); ++i) {
            int e = supply_edges[i];
            for (const auto& [v, arc_id] : supply_arcs[i]) {
                double r = net.flow_on(arc_id);
                if (r != 0) fa.rates[e].emplace_back(v, r);
            }
        }
        for (size_t i = 0; i < demand_edges.size(); ++i) {
            int e = demand_edges[i];
            for (const auto& [u, arc_id] : demand_arcs[i]) {
                double r = net.flow_on(arc_id);
                if (r != 0) fa.rates[e].emplace_back(u, -r);
            }
        }
    }
    return fa;
}

FlowResiduals check_flow_assignment(const DirectedHypergraph& h, const DensityVector& f,
                                    const std::vector<double>& f1, const FlowAssignment& fa,
                                    double tau) {
    FlowResiduals res;
    std::vector<EdgeDiscrepancy> discs = edge_discrepancies(h, f, tau);
    std::vector<double> net_rate(h.n, 0.0);
    for (size_t e = 0; e < h.edges.size(); ++e) {
        bool is_active = discs[e].delta > tau;
        double in_sum = 0, out_sum = 0;
        for (const auto& [u, r] : fa.rates[e]) {
            net_rate[u] += r;
            if (!is_active) {
                res.r1 = std::max(res.r1, std::abs(r));
                continue;
            }
            bool in_S = std::binary_search(discs[e].S_e.begin(), discs[e].S_e.end(), u);
            bool in_I = std::binary_search(discs[e].I_e.begin(), discs[e].I_e.end(), u);
            if (r < 0 && !in_S) res.r1 = std::max(res.r1, -r);
            if (r > 0 && !in_I) res.r1 = std::max(res.r1, r);
            if (r > 0) in_sum += r;
            if (r < 0) out_sum += -r;
        }
        if (is_active) {
            double c = h.edges[e].w * discs[e].delta;
            res.r2 = std::max(res.r2, std::abs(in_sum - c));
            res.r2 = std::max(res.r2, std::abs(out_sum - c));
        }
    }
    for (int u = 0; u < h.n; ++u) {
        if (h.is_stationary(u)) continue;
        res.r0 = std::max(res.r0, std::abs(h.omega[u] * f1[u] - net_rate[u]));
    }
    return res;
}

double norm_identity_residual(const DirectedHypergraph& h, const DensityVector& f,
                              const std::vector<double>& f1, double tau) {
    OrderedPartition sigma0 = induced_partition(f, tau);
    OrderedPartition sigma1 = refine_by(sigma0, f1, tau);
    LevelEdgeSets sets1 = edge_sets_at(h, sigma1);

    double sum = 0;
    for (size_t e = 0; e < h.edges.size(); ++e) {
        double fmax = f[h.edges[e].tail[0]];
        for (int u : h.edges[e].tail) fmax = std::max(fmax, f[u]);
        double fmin = f[h.edges[e].head[0]];
        for (int v : h.edges[e].head) fmin = std::min(fmin, f[v]);
        double d0 = fmax - fmin;
        if (!(d0 > tau)) continue;
        double d1 = f1[sets1.S[e][0]] - f1[sets1.I[e][0]];
        sum += h.edges[e].w * d0 * d1;
    }
    double nrm = inner_product_omega(h, f1, f1);
    return std::abs(nrm + sum);
}

} // namespace dihyper
