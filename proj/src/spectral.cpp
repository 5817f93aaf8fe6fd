#include "dihyper/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dihyper/quadratic.hpp"

namespace dihyper {

namespace {

// Removes the omega-component along the all-ones vector.
void project_orthogonal(const DirectedHypergraph& h, DensityVector& f) {
    double denom = 0, num = 0;
    for (int u = 0; u < h.n; ++u) {
        num += h.omega[u] * f[u];
        denom += h.omega[u];
    }
    double shift = num / denom;
    for (int u = 0; u < h.n; ++u) f[u] -= shift;
}

double ratio_or_inf(const DirectedHypergraph& h, const DensityVector& f) {
    double nrm = inner_product_omega(h, f, f);
    if (!(nrm > 1e-24)) return std::numeric_limits<double>::infinity();
    return 2 * quadratic_form(h, f) / nrm;
}

// Standard Nelder-Mead on R^n; objective must be cheap.
template <typename F>
double nelder_mead(F&& obj, std::vector<double> x0, int max_iter) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> simplex(n + 1, x0);
    for (int i = 0; i < n; ++i) simplex[i + 1][i] += 0.5;
    std::vector<double> fv(n + 1);
    for (int i = 0; i <= n; ++i) fv[i] = obj(simplex[i]);

    for (int it = 0; it < max_iter; ++it) {
        std::vector<int> order(n + 1);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        int best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(fv[worst] - fv[best]) <= 1e-12 * std::max(1.0, std::abs(fv[best]))) break;

        std::vector<double> centroid(n, 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int d = 0; d < n; ++d) centroid[d] += simplex[i][d] / n;
        }
        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (int d = 0; d < n; ++d)
                p[d] = centroid[d] + coef * (simplex[worst][d] - centroid[d]);
            return p;
        };
        std::vector<double> refl = blend(-1.0);
        double fr = obj(refl);
        if (fr < fv[best]) {
            std::vector<double> exp_p = blend(-2.0);
            double fe = obj(exp_p);
            if (fe < fr) { simplex[worst] = exp_p; fv[worst] = fe; }
            else { simplex[worst] = refl; fv[worst] = fr; }
        } else if (fr < fv[second]) {
            simplex[worst] = refl;
            fv[worst] = fr;
        } else {
            std::vector<double> con = blend(0.5);
            double fc = obj(con);
            if (fc < fv[worst]) { simplex[worst] = con; fv[worst] = fc; }
            else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int d = 0; d < n; ++d)
                        simplex[i][d] = simplex[best][d] + 0.5 * (simplex[i][d] - simplex[best][d]);
                    fv[i] = obj(simplex[i]);
                }
            }
        }
    }
    return *std::min_element(fv.begin(), fv.end());
}

} // namespace

SpectralResult estimate_gamma2(const DirectedHypergraph& h, int restarts,
                               const IntegratorConfig& config, uint64_t seed, int threads) {
    if (h.has_stationary())
        throw std::invalid_argument("gamma2 requires no stationary vertices");
    if (restarts <= 0) throw std::invalid_argument("restarts must be positive");

    double dt = config.h > 0 ? config.h : 0.05 * default_step(h) / 1e-3;
    int max_steps = static_cast<int>(std::ceil(config.max_time / dt));

    auto one_restart = [&](int r) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (r + 1));
        std::normal_distribution<double> gauss(0.0, 1.0);
        DensityVector f(h.n);
        double nrm = 0;
        do {
            for (double& x : f) x = gauss(rng);
            project_orthogonal(h, f);
            nrm = norm_omega(h, f);
        } while (!(nrm > 1e-12));
        for (double& x : f) x /= nrm;

        std::pair<double, DensityVector> best{std::numeric_limits<double>::infinity(), f};
        double prev_d = std::numeric_limits<double>::infinity();
        int stall = 0;
        for (int k = 0; k < max_steps; ++k) {
            FirstDerivative fd = first_derivative(h, f, config.tau);
            double d = ratio_or_inf(h, f);
            if (d < best.first) best = {d, f};
            double resid = 0;
            {
                DensityVector rvec(h.n);
                for (int u = 0; u < h.n; ++u) rvec[u] = fd.L[u] - d * f[u];
                resid = norm_omega(h, rvec);
            }
            if (resid <= 1e-12) break;
            if (d > prev_d - 1e-14) {
                if (++stall > 50) break;
            } else {
                stall = 0;
            }
            prev_d = d;
            for (int u = 0; u < h.n; ++u) f[u] += dt * fd.f1[u];
            project_orthogonal(h, f);
            nrm = norm_omega(h, f);
            if (!(nrm > 1e-12)) break;
            for (double& x : f) x /= nrm;
        }
        return best;
    };

    std::vector<std::pair<double, DensityVector>> outcomes(restarts);
    if (threads > 1) {
        std::vector<std::future<std::pair<double, DensityVector>>> jobs;
        for (int r = 0; r < restarts; ++r)
            jobs.push_back(std::async(std::launch::async, one_restart, r));
        for (int r = 0; r < restarts; ++r) outcomes[r] = jobs[r].get();
    } else {
        for (int r = 0; r < restarts; ++r) outcomes[r] = one_restart(r);
    }

    SpectralResult best;
    best.gamma2 = std::numeric_limits<double>::infinity();
    for (const auto& [d, f] : outcomes) {
        if (d < best.gamma2) {
            best.gamma2 = d;
            best.minimizer = f;
        }
    }

    FirstDerivative fd = first_derivative(h, best.minimizer, config.tau);
    DensityVector rvec(h.n);
    for (int u = 0; u < h.n; ++u) rvec[u] = fd.L[u] - best.gamma2 * best.minimizer[u];
    best.residual = norm_omega(h, rvec);
    bool constant = true;
    for (int u = 1; u < h.n; ++u)
        if (std::abs(best.minimizer[u] - best.minimizer[0]) > 1e-12) constant = false;
    if (!constant) best.sweep = sweep_cut(h, best.minimizer);
    return best;
}

CutReport sweep_cut(const DirectedHypergraph& h, const DensityVector& f) {
    if (h.has_stationary())
        throw std::invalid_argument("sweep cut requires no stationary vertices");
    if (f.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    bool constant = true;
    for (int u = 1; u < h.n; ++u)
        if (f[u] != f[0]) constant = false;
    if (constant) throw std::invalid_argument("sweep cut undefined for constant f");

    double total = 0;
    for (int u = 0; u < h.n; ++u) total += h.omega[u];
    const double half = total / 2 + 1e-12 * std::max(1.0, total);

    CutReport best;
    best.phi = std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<int>& order) {
        // Prefixes take the low end, suffixes the high end.
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<int> s;
            double ws = 0;
            for (int i = 0; i < h.n - 1; ++i) {
                int u = pass == 0 ? order[i] : order[h.n - 1 - i];
                s.push_back(u);
                ws += h.omega[u];
                if (ws > half) break;
                CutReport rep = expansion(h, s);
                if (rep.phi < best.phi) best = rep;
            }
        }
    };
    std::vector<int> order(h.n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return f[a] != f[b] ? f[a] < f[b] : a < b;
    });
    consider(order);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return f[a] != f[b] ? f[a] < f[b] : a > b;
    });
    consider(order);
    return best;
}

double gamma2_oracle(const DirectedHypergraph& h, uint64_t seed, int restarts) {
    if (h.has_stationary())
        throw std::invalid_argument("gamma2 requires no stationary vertices");
    auto objective = [&](const std::vector<double>& x) {
        DensityVector f = x;
        project_orthogonal(h, f);
        return ratio_or_inf(h, f);
    };

    double best = std::numeric_limits<double>::infinity();
    std::vector<DensityVector> seeds;

    // Recentred cut indicators: D(chi_S - c*1) <= 2 phi^+(S) for admissible
    // S, so these seeds already certify the Cheeger upper bound side.
    double total = 0;
    for (int u = 0; u < h.n; ++u) total += h.omega[u];
    if (h.n <= 16) {
        for (uint32_t mask = 1; mask + 1 < (1u << h.n); ++mask) {
            double ws = 0;
            for (int u = 0; u < h.n; ++u)
                if (mask & (1u << u)) ws += h.omega[u];
            if (ws > total / 2 + 1e-12 * total) continue;
            DensityVector f(h.n, 0.0);
            for (int u = 0; u < h.n; ++u)
                if (mask & (1u << u)) f[u] = 1.0;
            project_orthogonal(h, f);
            DensityVector g = f;
            for (double& x : g) x = -x;
            best = std::min(best, ratio_or_inf(h, f));
            best = std::min(best, ratio_or_inf(h, g));
            seeds.push_back(f);
        }
        std::sort(seeds.begin(), seeds.end(), [&](const auto& a, const auto& b) {
            return ratio_or_inf(h, a) < ratio_or_inf(h, b);
        });
        if (seeds.size() > 4) seeds.resize(4);
        {
            std::vector<DensityVector> neg;
            for (const auto& sdd : seeds) {
                DensityVector g = sdd;
                for (double& x : g) x = -x;
                neg.push_back(g);
            }
            seeds.insert(seeds.end(), neg.begin(), neg.end());
        }
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int r = 0; r < restarts; ++r) {
        DensityVector f(h.n);
        for (double& x : f) x = gauss(rng);
        seeds.push_back(f);
    }
    for (const auto& s : seeds)
        best = std::min(best, nelder_mead(objective, s, 250 * h.n));
    return best;
}

CheegerReport cheeger_verify(const DirectedHypergraph& h, uint64_t seed, int enumeration_cap) {
    CheegerReport rep;
    ExpansionResult ex = brute_force_phi_H(h, enumeration_cap);
    rep.phi_H = ex.phi_H;
    rep.S = ex.argmin;

    IntegratorConfig cfg;
    cfg.max_time = 60;
    SpectralResult est = estimate_gamma2(h, 8, cfg, seed);
    rep.gamma2_estimate = est.gamma2;
    rep.gamma2_oracle = gamma2_oracle(h, seed + 1);

    double g2 = std::min(rep.gamma2_oracle, rep.gamma2_estimate);
    const double tol = 1e-6;
    rep.sandwich_ok = (g2 / 2 - tol <= rep.phi_H) && (rep.phi_H <= 2 * std::sqrt(g2) + tol);
    return rep;
}

} // namespace dihyper
