#include "dihyper/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dihyper/quadratic.hpp"

namespace dihyper {

double default_step(const DirectedHypergraph& h) {
    double omega_min = std::numeric_limits<double>::infinity();
    for (int u = 0; u < h.n; ++u)
        if (!h.is_stationary(u)) omega_min = std::min(omega_min, h.omega[u]);
    double w_max = 0;
    for (const auto& e : h.edges) w_max = std::max(w_max, e.w);
    if (w_max == 0) return 1e-3;
    return 1e-3 * omega_min / w_max;
}

DensityVector step(const DirectedHypergraph& h, const DensityVector& f, double dt,
                   IntegratorMethod method, double tau) {
    if (!(dt > 0)) throw std::invalid_argument("step size must be positive");
    auto deriv = [&](const DensityVector& x) { return first_derivative(h, x, tau).f1; };
    DensityVector out = f;
    if (method == IntegratorMethod::Euler) {
        DensityVector k1 = deriv(f);
        for (int u = 0; u < h.n; ++u)
            if (!h.is_stationary(u)) out[u] += dt * k1[u];
        return out;
    }
    DensityVector k1 = deriv(f);
    DensityVector x2 = f;
    for (int u = 0; u < h.n; ++u) x2[u] += 0.5 * dt * k1[u];
    DensityVector k2 = deriv(x2);
    DensityVector x3 = f;
    for (int u = 0; u < h.n; ++u) x3[u] += 0.5 * dt * k2[u];
    DensityVector k3 = deriv(x3);
    DensityVector x4 = f;
    for (int u = 0; u < h.n; ++u) x4[u] += dt * k3[u];
    DensityVector k4 = deriv(x4);
    for (int u = 0; u < h.n; ++u)
        if (!h.is_stationary(u)) out[u] += dt / 6.0 * (k1[u] + 2 * k2[u] + 2 * k3[u] + k4[u]);
    return out;
}

std::vector<TrajectoryRecord> run(const DirectedHypergraph& h, const DensityVector& f0,
                                  const IntegratorConfig& config) {
    if (f0.size() != static_cast<size_t>(h.n)) throw std::invalid_argument("dimension mismatch");
    if (!(config.max_time > 0) || config.record_every <= 0)
        throw std::invalid_argument("invalid integrator configuration");
    double dt = config.h > 0 ? config.h : default_step(h);
    const bool track_d = !h.has_stationary();

    std::vector<TrajectoryRecord> records;
    DensityVector f = f0;
    double t = 0;
    int steps = 0;

    auto make_record = [&](const DensityVector& x, double time, const FirstDerivative& fd) {
        TrajectoryRecord rec;
        rec.t = time;
        rec.f = x;
        rec.Q = quadratic_form(h, x);
        if (track_d && inner_product_omega(h, x, x) > 0) rec.D = discrepancy_ratio(h, x);
        rec.grad_norm = norm_omega(h, fd.L);
        return rec;
    };

    while (true) {
        FirstDerivative fd = first_derivative(h, f, config.tau);
        double grad = norm_omega(h, fd.L);
        if (steps % config.record_every == 0) records.push_back(make_record(f, t, fd));
        if (config.stop_grad_tol > 0 && grad <= config.stop_grad_tol) break;
        double remaining = config.max_time - t;
        if (remaining <= 1e-9 * dt) break;

        double dt_eff = std::min(dt, remaining);
        DensityVector next = step(h, f, dt_eff, config.method, config.tau);
        if (config.adaptive) {
            double q_before = quadratic_form(h, f);
            auto worse = [&](const DensityVector& cand) {
                double tol = 1e-12 * std::max(1.0, q_before);
                if (quadratic_form(h, cand) > q_before + tol) return true;
                if (track_d && inner_product_omega(h, f, f) > 0 &&
                    inner_product_omega(h, cand, cand) > 0)
                    return discrepancy_ratio(h, cand) >
                           discrepancy_ratio(h, f) + 1e-12 * std::max(1.0, discrepancy_ratio(h, f));
                return false;
            };
            while (worse(next)) {
                dt_eff /= 2;
                if (dt_eff < 1e-15)
                    throw std::runtime_error("step underflow: stiffness near a class merge");
                next = step(h, f, dt_eff, config.method, config.tau);
            }
        }
        f = std::move(next);
        t += dt_eff;
        ++steps;
    }
    if (records.empty() || records.back().t < t - 1e-9 * dt) {
        FirstDerivative fd = first_derivative(h, f, config.tau);
        records.push_back(make_record(f, t, fd));
    }
    return records;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records) {
    os << "t,Q,D,grad_norm\n";
    char buf[128];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.12g,%.12g,", r.t, r.Q);
        os << buf;
        if (r.D) {
            std::snprintf(buf, sizeof(buf), "%.12g", *r.D);
            os << buf;
        }
        std::snprintf(buf, sizeof(buf), ",%.12g\n", r.grad_norm);
        os << buf;
    }
}

void write_density_jsonl(std::ostream& os, const std::vector<TrajectoryRecord>& records) {
    char buf[64];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.12g", r.t);
        os << "{\"t\": " << buf << ", \"f\": [";
        for (size_t i = 0; i < r.f.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.12g", r.f[i]);
            os << (i ? ", " : "") << buf;
        }
        os << "]}\n";
    }
}

} // namespace dihyper
