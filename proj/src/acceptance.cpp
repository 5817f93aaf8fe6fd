#include "dihyper/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include "dihyper/densest.hpp"
#include "dihyper/diffusion_operator.hpp"
#include "dihyper/generator.hpp"
#include "dihyper/quadratic.hpp"
#include "dihyper/spectral.hpp"
#include "dihyper/sssl.hpp"
#include "dihyper/trajectory.hpp"

namespace dihyper {

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

DirectedHypergraph k2_graph() {
    Hyperedge e;
    e.tail = {0, 1};
    e.head = {0, 1};
    e.w = 1.0;
    return build_hypergraph(2, {e});
}

DirectedHypergraph c4_graph() {
    std::vector<Hyperedge> edges;
    for (int i = 0; i < 4; ++i) {
        Hyperedge e;
        e.tail = {i, (i + 1) % 4};
        e.head = {i, (i + 1) % 4};
        e.w = 1.0;
        edges.push_back(e);
    }
    return build_hypergraph(4, std::move(edges));
}

DirectedHypergraph two_disjoint_edges() {
    Hyperedge a, b;
    a.tail = a.head = {0, 1};
    b.tail = b.head = {2, 3};
    a.w = b.w = 1.0;
    return build_hypergraph(4, {a, b});
}

// Path s1(0) -- v -- s2(1) with undirected unit hyperedges.
LabelProblem path_problem() {
    Hyperedge e1, e2;
    e1.tail = e1.head = {0, 1};
    e2.tail = e2.head = {1, 2};
    e1.w = e2.w = 1.0;
    auto h = build_hypergraph(3, {e1, e2}, {0, 2}, WeightMode::Unit);
    return make_label_problem(std::move(h), {{0, 0.0}, {2, 1.0}});
}

CriterionResult rayleigh_kernel_norm_flow(uint64_t seed, int which) {
    // which: 1 Rayleigh, 2 kernel/conservation, 3 norm identity, 5 flow.
    std::mt19937_64 rng(seed ^ 0xabcd1234u);
    double worst = 0;
    double tol = 1e-9;
    const char* names[] = {"", "rayleigh-identity", "kernel-conservation", "norm-identity", "",
                           "flow-assignment"};
    for (int trial = 0; trial < 200; ++trial) {
        RandomGraphSpec spec;
        std::uniform_int_distribution<int> nd(3, 10), ed(2, 12);
        spec.n = nd(rng);
        spec.num_edges = ed(rng);
        spec.mode = WeightMode::Degree;
        DirectedHypergraph h = random_hypergraph(rng, spec);
        DensityVector f = random_density(rng, h.n, trial % 2 == 0);
        FirstDerivative fd = first_derivative(h, f);

        if (which == 1) {
            double lhs = inner_product_omega(h, f, fd.L);
            double q = quadratic_form(h, f);
            worst = std::max(worst, std::abs(lhs - 2 * q) / std::max(1.0, q));
        } else if (which == 2) {
            DensityVector ones(h.n, 1.0);
            FirstDerivative fone = first_derivative(h, ones);
            double kernel = norm_omega(h, fone.L);
            double conserve = std::abs(inner_product_omega(h, ones, fd.L));
            if (kernel > 1e-12) worst = std::max(worst, kernel);
            worst = std::max(worst, conserve);
        } else if (which == 3) {
            worst = std::max(worst, norm_identity_residual(h, f, fd.f1));
        } else if (which == 5) {
            FlowAssignment fa = flow_assignment(h, f, fd.f1);
            FlowResiduals r = check_flow_assignment(h, f, fd.f1, fa);
            worst = std::max(worst, std::max(r.r0, std::max(r.r1, r.r2)));
        }
    }
    CriterionResult res;
    res.id = which;
    res.name = names[which];
    res.pass = worst <= tol;
    res.detail = "max residual " + fmt(worst) + " (tol " + fmt(tol) + ", 200 instances)";
    return res;
}

CriterionResult densest_oracle(uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x5151u);
    int mismatches = 0;
    double worst = 0;
    for (int trial = 0; trial < 500; ++trial) {
        DensestInstance inst = random_densest_instance(rng, 12, trial % 2 == 1);
        for (DensestMode mode : {DensestMode::Max, DensestMode::Min}) {
            DensestSolution fast = solve(inst, mode);
            DensestSolution slow = solve_by_enumeration(inst, mode);
            worst = std::max(worst, std::abs(fast.density - slow.density));
            if (fast.P != slow.P) ++mismatches;
        }
    }
    CriterionResult res;
    res.id = 4;
    res.name = "densest-oracle";
    res.pass = worst <= 1e-12 && mismatches == 0;
    res.detail = "max density gap " + fmt(worst) + ", set mismatches " +
                 std::to_string(mismatches) + " (500 instances, both modes)";
    return res;
}

CriterionResult monotone_descent(uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x6d6du);
    double worst_q_slack = 0, worst_d_slack = 0, worst_rate = 0;
    int rate_points = 0;
    for (int trial = 0; trial < 50; ++trial) {
        RandomGraphSpec spec;
        std::uniform_int_distribution<int> nd(3, 8), ed(3, 10);
        spec.n = nd(rng);
        spec.num_edges = ed(rng);
        bool with_stat = trial % 2 == 1;
        spec.num_stationary = with_stat ? 1 : 0;
        spec.mode = with_stat ? WeightMode::Unit : WeightMode::Degree;
        DirectedHypergraph h = random_hypergraph(rng, spec);
        DensityVector f0 = random_density(rng, h.n, false);

        IntegratorConfig cfg;
        cfg.record_every = 1;
        cfg.max_time = 200 * default_step(h); // 200 steps
        // RK4 keeps the discrete trajectory on the ODE so the central
        // difference measures dQ/dt rather than integrator bias.
        cfg.method = IntegratorMethod::RK4;
        auto recs = run(h, f0, cfg);
        double hstep = recs.size() > 1 ? recs[1].t - recs[0].t : default_step(h);

        double max_grad2 = 0;
        for (const auto& r : recs) max_grad2 = std::max(max_grad2, r.grad_norm * r.grad_norm);
        double slack = 10 * hstep * hstep * std::max(1.0, max_grad2);
        for (size_t k = 0; k + 1 < recs.size(); ++k) {
            worst_q_slack = std::max(worst_q_slack, (recs[k + 1].Q - recs[k].Q) / slack);
            if (recs[k].D && recs[k + 1].D)
                worst_d_slack = std::max(worst_d_slack, (*recs[k + 1].D - *recs[k].D) / slack);
        }

        // dQ/dt against -||L f||^2 away from class merges: the class
        // structure (order and active set) must be stable across a window of
        // samples and no two class values may sit within a few step-motions
        // of each other, otherwise a switching event hides inside the
        // stencil.
        double omega_min = std::numeric_limits<double>::infinity();
        for (int u = 0; u < h.n; ++u)
            if (!h.is_stationary(u)) omega_min = std::min(omega_min, h.omega[u]);
        std::vector<size_t> signature(recs.size());
        std::vector<double> min_gap(recs.size());
        for (size_t k = 0; k < recs.size(); ++k) {
            OrderedPartition p = induced_partition(recs[k].f);
            size_t sig = p.num_classes();
            auto discs = edge_discrepancies(h, recs[k].f);
            for (const auto& d : discs) sig = sig * 31 + (d.delta > 1e-9 ? 1 : 0);
            for (int c : p.class_of) sig = sig * 131 + c;
            signature[k] = sig;
            double gap = std::numeric_limits<double>::infinity();
            for (int c = 0; c + 1 < p.num_classes(); ++c)
                gap = std::min(gap, recs[k].f[p.classes[c + 1][0]] - recs[k].f[p.classes[c][0]]);
            min_gap[k] = gap;
        }
        for (size_t k = 3; k + 3 < recs.size(); ++k) {
            bool stable = true;
            for (size_t j = k - 3; j <= k + 3; ++j)
                if (signature[j] != signature[k]) stable = false;
            if (!stable) continue;
            double g2 = recs[k].grad_norm * recs[k].grad_norm;
            if (g2 < 1e-6 * std::max(1.0, max_grad2)) continue;
            double motion = 8 * hstep * recs[k].grad_norm / std::sqrt(omega_min);
            if (min_gap[k] <= motion) continue;
            double fdq = (recs[k + 1].Q - recs[k - 1].Q) / (recs[k + 1].t - recs[k - 1].t);
            worst_rate = std::max(worst_rate, std::abs(fdq + g2) / g2);
            ++rate_points;
        }
    }
    CriterionResult res;
    res.id = 6;
    res.name = "monotone-descent";
    res.pass = worst_q_slack <= 1.0 && worst_d_slack <= 1.0 && worst_rate <= 1e-3;
    res.detail = "Q slack ratio " + fmt(worst_q_slack) + ", D slack ratio " + fmt(worst_d_slack) +
                 ", dQ/dt rel err " + fmt(worst_rate) + " over " + std::to_string(rate_points) +
                 " stable points";
    return res;
}

CriterionResult cheeger_sandwich(uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xc4eeu);
    int failures = 0;
    double worst_left = -1e9, worst_right = -1e9;
    for (int trial = 0; trial < 100; ++trial) {
        RandomGraphSpec spec;
        std::uniform_int_distribution<int> nd(3, 8), ed(2, 10);
        spec.n = nd(rng);
        spec.num_edges = ed(rng);
        spec.mode = WeightMode::Degree;
        DirectedHypergraph h = random_hypergraph(rng, spec);
        double phi = brute_force_phi_H(h).phi_H;
        double g2 = gamma2_oracle(h, seed + trial, 8);
        worst_left = std::max(worst_left, g2 / 2 - phi);
        worst_right = std::max(worst_right, phi - 2 * std::sqrt(std::max(0.0, g2)));
        if (g2 / 2 - 1e-6 > phi || phi > 2 * std::sqrt(std::max(0.0, g2)) + 1e-6) ++failures;
    }

    // Closed forms.
    double g2_k2 = gamma2_oracle(k2_graph(), seed);
    double phi_k2 = brute_force_phi_H(k2_graph()).phi_H;
    double g2_c4 = gamma2_oracle(c4_graph(), seed);
    double g2_disc = gamma2_oracle(two_disjoint_edges(), seed);
    double phi_disc = brute_force_phi_H(two_disjoint_edges()).phi_H;
    bool closed = std::abs(g2_k2 - 2) <= 1e-6 && std::abs(phi_k2 - 1) <= 1e-12 &&
                  std::abs(g2_c4 - 1) <= 1e-6 && std::abs(g2_disc) <= 1e-6 &&
                  std::abs(phi_disc) <= 1e-12;

    CriterionResult res;
    res.id = 7;
    res.name = "cheeger-sandwich";
    res.pass = failures == 0 && closed;
    res.detail = std::to_string(failures) + "/100 sandwich failures; worst margins " +
                 fmt(worst_left) + " / " + fmt(worst_right) + "; closed forms " +
                 (closed ? "ok" : "FAILED") + " (K2 g2=" + fmt(g2_k2) + ", C4 g2=" + fmt(g2_c4) +
                 ", disc g2=" + fmt(g2_disc) + ")";
    return res;
}

CriterionResult eigenpair(uint64_t seed) {
    IntegratorConfig cfg;
    cfg.max_time = 80;
    SpectralResult k2 = estimate_gamma2(k2_graph(), 8, cfg, seed);
    SpectralResult c4 = estimate_gamma2(c4_graph(), 8, cfg, seed);
    bool ok = std::abs(k2.gamma2 - 2) <= 1e-3 && k2.residual <= 1e-3 &&
              std::abs(c4.gamma2 - 1) <= 1e-3 && c4.residual <= 1e-3;
    CriterionResult res;
    res.id = 8;
    res.name = "eigenpair-at-convergence";
    res.pass = ok;
    res.detail = "K2 gamma2=" + fmt(k2.gamma2) + " resid=" + fmt(k2.residual) +
                 "; C4 gamma2=" + fmt(c4.gamma2) + " resid=" + fmt(c4.residual);
    return res;
}

DirectedHypergraph random_stationary_unit(std::mt19937_64& rng, int max_free) {
    std::uniform_int_distribution<int> nd(2, max_free), td(1, 2), ed(2, 8);
    int nfree = nd(rng), t = td(rng);
    RandomGraphSpec spec;
    spec.n = nfree + t;
    spec.num_edges = ed(rng);
    spec.num_stationary = t;
    spec.mode = WeightMode::Unit;
    return random_hypergraph(rng, spec);
}

CriterionResult subgradient_and_mixture(uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x59b1u);
    double worst_violation = 0;
    for (int trial = 0; trial < 100; ++trial) {
        DirectedHypergraph h = random_stationary_unit(rng, 6);
        DensityVector f = random_density(rng, h.n, trial % 2 == 0);
        auto chk = verify_subgradient(h, f, 100, seed + trial);
        worst_violation = std::max(worst_violation, chk.worst_violation);
    }

    double worst_recon = 0;
    int infeasible = 0;
    int done = 0;
    while (done < 50) {
        DirectedHypergraph h = random_stationary_unit(rng, 5);
        DensityVector f = random_density(rng, h.n, true);
        OrderedPartition p = induced_partition(f);
        bool small = true;
        for (const auto& cls : p.classes)
            if (cls.size() > 5) small = false;
        if (!small) continue;
        ++done;
        MixtureReport rep = verify_gradient_mixture(h, f);
        if (!rep.feasible) ++infeasible;
        else worst_recon = std::max(worst_recon, rep.reconstruction_error);
    }

    CriterionResult res;
    res.id = 9;
    res.name = "subgradient-and-mixture";
    res.pass = worst_violation <= 1e-9 && infeasible == 0 && worst_recon <= 1e-8;
    res.detail = "worst subgradient violation " + fmt(worst_violation) + "; mixture infeasible " +
                 std::to_string(infeasible) + "/50, worst reconstruction " + fmt(worst_recon);
    return res;
}

// Grid-search oracle over the label box, three zoom stages.
double grid_oracle_q(const LabelProblem& prob) {
    const DirectedHypergraph& h = prob.h;
    std::vector<int> free = h.free_vertices();
    const int d = static_cast<int>(free.size());
    double lo = prob.labels.begin()->second, hi = lo;
    for (const auto& [u, v] : prob.labels) {
        (void)u;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;

    const int pts = 41;
    std::vector<double> lo_box(d, lo), hi_box(d, hi);
    DensityVector f = prob.f0;
    std::vector<double> best_x(d, lo);
    double best_q = std::numeric_limits<double>::infinity();
    for (int stage = 0; stage < 3; ++stage) {
        std::vector<int> idx(d, 0);
        while (true) {
            for (int i = 0; i < d; ++i)
                f[free[i]] = lo_box[i] + (hi_box[i] - lo_box[i]) * idx[i] / (pts - 1);
            double q = quadratic_form(h, f);
            if (q < best_q) {
                best_q = q;
                for (int i = 0; i < d; ++i) best_x[i] = f[free[i]];
            }
            int carry = 0;
            while (carry < d && ++idx[carry] == pts) idx[carry++] = 0;
            if (carry == d) break;
        }
        for (int i = 0; i < d; ++i) {
            double cell = (hi_box[i] - lo_box[i]) / (pts - 1);
            lo_box[i] = std::max(lo, best_x[i] - 3 * cell);
            hi_box[i] = std::min(hi, best_x[i] + 3 * cell);
        }
    }
    return best_q;
}

CriterionResult sssl_optimum(uint64_t seed) {
    SolveParams params;
    params.h = 0.2;
    params.grad_tol = 1e-10;
    params.max_time = 200;
    LabelProblem path = path_problem();
    SolveReport rep = solve(path, SolveMode::Diffusion, params);
    bool path_ok = std::abs(rep.f_star[1] - 0.5) <= 1e-6 && std::abs(rep.Q_star - 0.25) <= 1e-6;

    std::mt19937_64 rng(seed ^ 0x10aau);
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> nd(1, 3), td(1, 3), ed(2, 8);
        int nfree = nd(rng), t = td(rng);
        RandomGraphSpec spec;
        spec.n = nfree + t;
        spec.num_edges = ed(rng);
        spec.num_stationary = t;
        spec.mode = WeightMode::Unit;
        DirectedHypergraph h = random_hypergraph(rng, spec);
        std::map<int, double> labels;
        std::uniform_int_distribution<int> lv(0, 8);
        for (int u : h.stationary) labels[u] = lv(rng) / 8.0;
        LabelProblem prob = make_label_problem(std::move(h), labels);
        SolveParams sp;
        sp.h = 0.2;
        sp.grad_tol = 1e-11;
        sp.max_time = 400;
        SolveReport r = solve(prob, SolveMode::Diffusion, sp);
        double oracle = grid_oracle_q(prob);
        worst = std::max(worst, std::abs(r.Q_star - oracle) / std::max(1.0, oracle));
    }
    CriterionResult res;
    res.id = 10;
    res.name = "sssl-optimum";
    res.pass = path_ok && worst <= 1e-4;
    res.detail = std::string("path ") + (path_ok ? "ok" : "FAILED") + " (f_v=" + fmt(rep.f_star[1]) +
                 ", Q=" + fmt(rep.Q_star) + "); worst oracle gap " + fmt(worst) + " over 20 problems";
    return res;
}

CriterionResult exact_trajectory(uint64_t) {
    Hyperedge e;
    e.tail = {0};
    e.head = {1};
    e.w = 1.0;
    DirectedHypergraph h = build_hypergraph(2, {e});
    IntegratorConfig cfg;
    cfg.h = 1e-4;
    cfg.max_time = 2.0;
    cfg.record_every = 1;
    auto recs = run(h, {1.0, 0.0}, cfg);
    double worst = 0;
    for (double target : {0.5, 1.0, 2.0}) {
        const TrajectoryRecord* nearest = &recs.front();
        for (const auto& r : recs)
            if (std::abs(r.t - target) < std::abs(nearest->t - target)) nearest = &r;
        double exact = (1 + std::exp(-2 * target)) / 2;
        worst = std::max(worst, std::abs(nearest->f[0] - exact));
    }
    CriterionResult res;
    res.id = 11;
    res.name = "single-edge-exact-trajectory";
    res.pass = worst <= 1e-3;
    res.detail = "max |f_u - closed form| " + fmt(worst) + " at t in {0.5, 1, 2}";
    return res;
}

} // namespace

std::vector<CriterionResult> run_acceptance(uint64_t seed) {
    std::vector<CriterionResult> out;
    out.push_back(rayleigh_kernel_norm_flow(seed, 1));
    out.push_back(rayleigh_kernel_norm_flow(seed, 2));
    out.push_back(rayleigh_kernel_norm_flow(seed, 3));
    out.push_back(densest_oracle(seed));
    out.push_back(rayleigh_kernel_norm_flow(seed, 5));
    out.push_back(monotone_descent(seed));
    out.push_back(cheeger_sandwich(seed));
    out.push_back(eigenpair(seed));
    out.push_back(subgradient_and_mixture(seed));
    out.push_back(sssl_optimum(seed));
    out.push_back(exact_trajectory(seed));
    return out;
}

std::vector<CriterionResult> run_instance_checks(const DirectedHypergraph& h, uint64_t seed,
                                                 int trials) {
    std::mt19937_64 rng(seed);
    bool unit = true;
    for (int u = 0; u < h.n; ++u)
        if (!h.is_stationary(u) && std::abs(h.omega[u] - 1.0) > 1e-12) unit = false;

    double rayleigh = 0, conserve = 0, norm_id = 0, flow = 0, subgrad = 0;
    DensityVector ones(h.n, 1.0);
    double kernel = norm_omega(h, first_derivative(h, ones).L);
    for (int t = 0; t < trials; ++t) {
        DensityVector f = random_density(rng, h.n, t % 2 == 0);
        FirstDerivative fd = first_derivative(h, f);
        if (!h.has_stationary()) {
            double q = quadratic_form(h, f);
            rayleigh = std::max(rayleigh,
                                std::abs(inner_product_omega(h, f, fd.L) - 2 * q) /
                                    std::max(1.0, q));
            conserve = std::max(conserve, std::abs(inner_product_omega(h, ones, fd.L)));
        }
        norm_id = std::max(norm_id, norm_identity_residual(h, f, fd.f1));
        FlowAssignment fa = flow_assignment(h, f, fd.f1);
        FlowResiduals r = check_flow_assignment(h, f, fd.f1, fa);
        flow = std::max(flow, std::max(r.r0, std::max(r.r1, r.r2)));
        if (unit && h.has_stationary())
            subgrad = std::max(subgrad, verify_subgradient(h, f, 50, seed + t).worst_violation);
    }

    std::vector<CriterionResult> out;
    auto add = [&](const std::string& name, double worst, double tol, bool applicable) {
        CriterionResult r;
        r.id = static_cast<int>(out.size()) + 1;
        r.name = name;
        r.pass = !applicable || worst <= tol;
        r.detail = applicable ? ("max residual " + fmt(worst) + " (tol " + fmt(tol) + ")")
                              : "not applicable";
        out.push_back(std::move(r));
    };
    add("rayleigh-identity", rayleigh, 1e-9, !h.has_stationary());
    add("kernel", kernel, 1e-12, true);
    add("conservation", conserve, 1e-9, !h.has_stationary());
    add("norm-identity", norm_id, 1e-9, true);
    add("flow-assignment", flow, 1e-9, true);
    add("subgradient", subgrad, 1e-9, unit && h.has_stationary());
    return out;
}

} // namespace dihyper
