#include "dihyper/sssl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>

#include "dihyper/quadratic.hpp"
#include "dihyper/trajectory.hpp"

namespace dihyper {

namespace {

void require_unit_weights(const DirectedHypergraph& h) {
    for (int u = 0; u < h.n; ++u)
        if (!h.is_stationary(u) && std::abs(h.omega[u] - 1.0) > 1e-12)
            throw std::invalid_argument("this operation requires unit weights on N");
}

// Phase-1 simplex for {x >= 0 : A x = b}; returns a feasible x or nullopt.
// Dense tableau with Bland's rule; A is small (rows <= 8, cols <= 5040).
std::optional<std::vector<double>> feasible_point(std::vector<std::vector<double>> a,
                                                  std::vector<double> b) {
    const int m = static_cast<int>(a.size());
    const int n = m ? static_cast<int>(a[0].size()) : 0;
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0) {
            b[i] = -b[i];
            for (double& v : a[i]) v = -v;
        }
    }
    // Columns: n structural + m artificial.
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1.0;
        t[i][n + m] = b[i];
        basis[i] = n + i;
    }
    // Objective row: minimize sum of artificials -> reduced costs.
    for (int j = 0; j <= n + m; ++j) {
        double s = 0;
        for (int i = 0; i < m; ++i)
            if (basis[i] >= n) s += t[i][j];
        t[m][j] = s;
    }
    for (int i = 0; i < m; ++i) t[m][n + i] = 0.0;

    const double eps = 1e-11;
    const int max_pivots = 40000;
    for (int pivot = 0; pivot < max_pivots; ++pivot) {
        int col = -1;
        for (int j = 0; j < n; ++j) {
            if (t[m][j] > eps) { col = j; break; } // Bland: lowest index
        }
        if (col < 0) break;
        int row = -1;
        double best_ratio = 0;
        for (int i = 0; i < m; ++i) {
            if (t[i][col] > eps) {
                double ratio = t[i][n + m] / t[i][col];
                if (row < 0 || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[row])) {
                    row = i;
                    best_ratio = ratio;
                }
            }
        }
        if (row < 0) break; // unbounded direction cannot happen in phase 1
        double pv = t[row][col];
        for (double& v : t[row]) v /= pv;
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            double factor = t[i][col];
            if (factor == 0) continue;
            for (int j = 0; j <= n + m; ++j) t[i][j] -= factor * t[row][j];
        }
        basis[row] = col;
    }
    double artificial = 0;
    for (int i = 0; i < m; ++i)
        if (basis[i] >= n) artificial += t[i][n + m];
    if (artificial > 1e-9) return std::nullopt;
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = std::max(0.0, t[i][n + m]);
    return x;
}

} // namespace

LabelProblem make_label_problem(DirectedHypergraph h, const std::map<int, double>& labels,
                                const DensityVector* f0_N) {
    if (!h.has_stationary())
        throw std::invalid_argument("label problem requires stationary vertices");
    require_unit_weights(h);
    LabelProblem p;
    p.f0.assign(h.n, 0.0);
    for (int u : h.stationary) {
        auto it = labels.find(u);
        if (it == labels.end())
            throw std::invalid_argument("stationary vertex " + std::to_string(u) + " is unlabeled");
        p.f0[u] = it->second;
    }
    for (const auto& [u, val] : labels) {
        (void)val;
        if (u < 0 || u >= h.n || !h.is_stationary(u))
            throw std::invalid_argument("label on non-stationary vertex " + std::to_string(u));
    }
    if (f0_N) {
        if (f0_N->size() == static_cast<size_t>(h.num_free())) {
            size_t i = 0;
            for (int u = 0; u < h.n; ++u)
                if (!h.is_stationary(u)) p.f0[u] = (*f0_N)[i++];
        } else if (f0_N->size() == static_cast<size_t>(h.n)) {
            for (int u = 0; u < h.n; ++u)
                if (!h.is_stationary(u)) p.f0[u] = (*f0_N)[u];
        } else {
            throw std::invalid_argument("f0 dimension mismatch");
        }
    }
    p.labels = labels;
    p.h = std::move(h);
    return p;
}

SolveReport solve(const LabelProblem& problem, SolveMode mode, const SolveParams& params) {
    const DirectedHypergraph& h = problem.h;
    require_unit_weights(h);
    SolveReport rep;

    if (mode == SolveMode::Diffusion) {
        IntegratorConfig cfg;
        cfg.h = params.h;
        cfg.adaptive = params.adaptive;
        cfg.max_time = params.max_time;
        cfg.stop_grad_tol = params.grad_tol;
        cfg.record_every = 1;
        cfg.tau = params.tau;
        auto records = run(h, problem.f0, cfg);
        rep.f_star = records.back().f;
        rep.Q_star = records.back().Q;
        rep.grad_norm_final = records.back().grad_norm;
        rep.iterations = static_cast<int>(records.size()) - 1;
        rep.q_history.reserve(records.size());
        for (const auto& r : records) rep.q_history.push_back(r.Q);
        return rep;
    }

    DensityVector f = problem.f0;
    DensityVector best = f;
    double best_q = quadratic_form(h, f);
    rep.q_history.push_back(best_q);
    int k = 0;
    double grad = 0;
    for (; k < params.max_iters; ++k) {
        FirstDerivative fd = first_derivative(h, f, params.tau);
        grad = norm_omega(h, fd.L);
        if (grad <= params.grad_tol) break;
        double eta = params.eta0 / std::sqrt(static_cast<double>(k + 1));
        for (int u = 0; u < h.n; ++u)
            if (!h.is_stationary(u)) f[u] -= eta * fd.L[u];
        double q = quadratic_form(h, f);
        rep.q_history.push_back(q);
        if (q < best_q) {
            best_q = q;
            best = f;
        }
    }
    rep.f_star = best;
    rep.Q_star = best_q;
    rep.iterations = k;
    rep.grad_norm_final = norm_omega(h, first_derivative(h, best, params.tau).L);
    return rep;
}

SubgradientCheck verify_subgradient(const DirectedHypergraph& h, const DensityVector& f,
                                    int num_samples, uint64_t seed, double tol) {
    require_unit_weights(h);
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    FirstDerivative fd = first_derivative(h, f);
    double qf = quadratic_form(h, f);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SubgradientCheck chk;
    chk.samples = num_samples;
    for (int s = 0; s < num_samples; ++s) {
        DensityVector g = f;
        for (int u = 0; u < h.n; ++u)
            if (!h.is_stationary(u)) g[u] += gauss(rng);
        double inner = 0;
        for (int u = 0; u < h.n; ++u)
            if (!h.is_stationary(u)) inner += (g[u] - f[u]) * fd.L[u];
        double violation = qf + inner - quadratic_form(h, g);
        chk.worst_violation = std::max(chk.worst_violation, violation);
    }
    chk.ok = chk.worst_violation <= tol;
    return chk;
}

MixtureReport verify_gradient_mixture(const DirectedHypergraph& h, const DensityVector& f,
                                      double tau, int class_cap) {
    require_unit_weights(h);
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    FirstDerivative fd = first_derivative(h, f, tau);
    std::vector<EdgeDiscrepancy> discs = edge_discrepancies(h, f, tau);
    OrderedPartition sigma0 = induced_partition(f, tau);

    MixtureReport rep;
    for (const auto& cls : sigma0.classes) {
        if (static_cast<int>(cls.size()) > class_cap)
            throw std::invalid_argument("class size exceeds the permutation enumeration cap");
        std::vector<int> free_members;
        for (int u : cls)
            if (!h.is_stationary(u)) free_members.push_back(u);
        if (free_members.empty()) continue;

        // Active edges whose giver (receiver) tie group lives in this class.
        std::vector<int> s_edges, i_edges;
        for (size_t e = 0; e < discs.size(); ++e) {
            if (!(discs[e].delta > tau)) continue;
            if (sigma0.class_of[discs[e].S_e[0]] == sigma0.class_of[cls[0]])
                s_edges.push_back(static_cast<int>(e));
            if (sigma0.class_of[discs[e].I_e[0]] == sigma0.class_of[cls[0]])
                i_edges.push_back(static_cast<int>(e));
        }
        if (s_edges.empty() && i_edges.empty()) {
            bool all_zero = true;
            for (int u : free_members)
                if (std::abs(fd.L[u]) > 1e-12) all_zero = false;
            if (!all_zero) {
                rep.feasible = false;
                rep.reconstruction_error = std::numeric_limits<double>::infinity();
            }
            continue;
        }

        // One column per permutation of the class: the gradient its order
        // induces on the free members.
        std::vector<int> perm = cls;
        std::sort(perm.begin(), perm.end());
        std::vector<std::vector<int>> perms;
        do {
            perms.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::map<int, int> row_of;
        for (size_t i = 0; i < free_members.size(); ++i) row_of[free_members[i]] = static_cast<int>(i);
        const int m = static_cast<int>(free_members.size());
        const int ncols = static_cast<int>(perms.size());
        std::vector<std::vector<double>> cols(ncols, std::vector<double>(m, 0.0));
        std::vector<int> rank(h.n, -1);
        for (int p = 0; p < ncols; ++p) {
            for (size_t i = 0; i < perms[p].size(); ++i) rank[perms[p][i]] = static_cast<int>(i);
            for (int e : s_edges) {
                int top = discs[e].S_e[0];
                for (int u : discs[e].S_e)
                    if (rank[u] > rank[top]) top = u;
                if (!h.is_stationary(top))
                    cols[p][row_of.at(top)] += h.edges[e].w * discs[e].delta;
            }
            for (int e : i_edges) {
                int bot = discs[e].I_e[0];
                for (int v : discs[e].I_e)
                    if (rank[v] < rank[bot]) bot = v;
                if (!h.is_stationary(bot))
                    cols[p][row_of.at(bot)] -= h.edges[e].w * discs[e].delta;
            }
        }

        // Rows: match L_omega f on the free members, plus the simplex row.
        std::vector<std::vector<double>> a(m + 1, std::vector<double>(ncols, 0.0));
        std::vector<double> b(m + 1, 0.0);
        for (int i = 0; i < m; ++i) {
            for (int p = 0; p < ncols; ++p) a[i][p] = cols[p][i];
            b[i] = fd.L[free_members[i]];
        }
        for (int p = 0; p < ncols; ++p) a[m][p] = 1.0;
        b[m] = 1.0;

        auto alpha = feasible_point(a, b);
        if (!alpha) {
            rep.feasible = false;
            rep.reconstruction_error = std::numeric_limits<double>::infinity();
            continue;
        }
        double err = 0;
        for (int i = 0; i <= m; ++i) {
            double lhs = 0;
            for (int p = 0; p < ncols; ++p) lhs += a[i][p] * (*alpha)[p];
            err = std::max(err, std::abs(lhs - b[i]));
        }
        rep.reconstruction_error = std::max(rep.reconstruction_error, err);

        MixtureReport::ClassWitness w;
        w.members = cls;
        for (int p = 0; p < ncols; ++p)
            if ((*alpha)[p] > 1e-12) w.distribution.emplace_back(perms[p], (*alpha)[p]);
        rep.witnesses.push_back(std::move(w));
    }
    return rep;
}

} // namespace dihyper
