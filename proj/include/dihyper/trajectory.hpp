#pragma once

#include <optional>
#include <ostream>

#include "dihyper/diffusion_operator.hpp"
#include "dihyper/hypergraph.hpp"

namespace dihyper {

struct TrajectoryRecord {
    double t = 0;
    std::vector<double> f;
    double Q = 0;
    std::optional<double> D; // absent when stationary vertices exist
    double grad_norm = 0;    // ||L_omega f||_omega
};

enum class IntegratorMethod { Euler, RK4 };

struct IntegratorConfig {
    IntegratorMethod method = IntegratorMethod::Euler;
    double h = 0; // 0 picks the default 1e-3 * omega_min / w_max
    bool adaptive = false;
    double max_time = 10.0;
    double stop_grad_tol = 0; // 0 disables the gradient stop
    int record_every = 1;     // in steps
    double tau = 1e-9;
};

// Stable default step for the explicit scheme.
double default_step(const DirectedHypergraph& h);

// One explicit step of df/dt = -L_omega f; stationary coordinates unchanged.
DensityVector step(const DirectedHypergraph& h, const DensityVector& f, double dt,
                   IntegratorMethod method, double tau = 1e-9);

// Integrates until max_time or the gradient stop, sampling every
// record_every steps (first and last states always recorded). In adaptive
// mode a step that increases Q (or D when V = N) beyond 1e-12 is retried
// with half the step; h underflowing 1e-15 reports stiffness near a class
// merge.
std::vector<TrajectoryRecord> run(const DirectedHypergraph& h, const DensityVector& f0,
                                  const IntegratorConfig& config);

// CSV with header t,Q,D,grad_norm; D is left empty when absent.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records);

// One JSON object per line: {"t": ..., "f": [...]}.
void write_density_jsonl(std::ostream& os, const std::vector<TrajectoryRecord>& records);

} // namespace dihyper
