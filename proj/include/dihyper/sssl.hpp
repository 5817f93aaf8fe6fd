#pragma once

#include <cstdint>
#include <map>

#include "dihyper/diffusion_operator.hpp"
#include "dihyper/hypergraph.hpp"

namespace dihyper {

// Minimize Q(f_N) subject to f_T fixed. Requires stationary vertices and
// unit weights on N.
struct LabelProblem {
    DirectedHypergraph h;
    std::map<int, double> labels; // one entry per stationary vertex
    DensityVector f0;             // full-size start, labels already applied
};

LabelProblem make_label_problem(DirectedHypergraph h, const std::map<int, double>& labels,
                                const DensityVector* f0_N = nullptr);

enum class SolveMode { Diffusion, Subgradient };

struct SolveParams {
    double h = 0;            // diffusion step; 0 picks the default
    bool adaptive = true;    // halve the step whenever Q would increase
    double eta0 = 1.0;       // subgradient step scale, eta_k = eta0/sqrt(k+1)
    int max_iters = 20000;
    double grad_tol = 1e-9;
    double max_time = 200.0; // diffusion horizon
    double tau = 1e-9;
};

struct SolveReport {
    DensityVector f_star;
    double Q_star = 0;
    int iterations = 0;
    double grad_norm_final = 0;
    std::vector<double> q_history;
};

SolveReport solve(const LabelProblem& problem, SolveMode mode, const SolveParams& params = {});

struct SubgradientCheck {
    bool ok = true;
    double worst_violation = 0; // max over samples of Q(f)+<g-f,Lf> - Q(g)
    int samples = 0;
};

// Samples g around f and checks Q(g) >= Q(f) + <g_N - f_N, L_omega f>.
SubgradientCheck verify_subgradient(const DirectedHypergraph& h, const DensityVector& f,
                                    int num_samples, uint64_t seed, double tol = 1e-9);

struct MixtureReport {
    bool feasible = true;
    double reconstruction_error = 0;
    // Per class with nontrivial support: (class vertices, permutations with
    // their weights). Permutations list class vertices from lowest to
    // highest rank.
    struct ClassWitness {
        std::vector<int> members;
        std::vector<std::pair<std::vector<int>, double>> distribution;
    };
    std::vector<ClassWitness> witnesses;
};

// Finds, per equivalence class of ς(f), a distribution over tie-resolving
// permutations whose expected gradient reproduces L_omega f.
MixtureReport verify_gradient_mixture(const DirectedHypergraph& h, const DensityVector& f,
                                      double tau = 1e-9, int class_cap = 7);

} // namespace dihyper
