#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dihyper/generator.hpp"
#include "dihyper/quadratic.hpp"
#include "dihyper/sssl.hpp"

using namespace dihyper;

namespace {

Hyperedge undirected(std::vector<int> verts, double w = 1.0) {
    Hyperedge e;
    e.tail = verts;
    e.head = std::move(verts);
    e.w = w;
    return e;
}

LabelProblem path_problem() {
    auto h = build_hypergraph(3, {undirected({0, 1}), undirected({1, 2})}, {0, 2},
                              WeightMode::Unit);
    return make_label_problem(std::move(h), {{0, 0.0}, {2, 1.0}});
}

} // namespace

TEST_CASE("label problem validation") {
    auto h = build_hypergraph(3, {undirected({0, 1}), undirected({1, 2})}, {0, 2},
                              WeightMode::Unit);
    CHECK_THROWS_AS(make_label_problem(h, {{0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(make_label_problem(h, {{0, 0.0}, {1, 0.5}, {2, 1.0}}),
                    std::invalid_argument);
    auto no_stat = build_hypergraph(2, {undirected({0, 1})}, {}, WeightMode::Unit);
    CHECK_THROWS_AS(make_label_problem(no_stat, {}), std::invalid_argument);
    auto weighted = build_hypergraph(2, {undirected({0, 1}, 2.0)}, {0}, WeightMode::Degree);
    CHECK_THROWS_AS(make_label_problem(weighted, {{0, 1.0}}), std::invalid_argument);
}

TEST_CASE("path instance reaches the calculus optimum in both modes") {
    SolveParams diff;
    diff.h = 0.1;
    diff.grad_tol = 1e-10;
    diff.max_time = 100;
    auto rep = solve(path_problem(), SolveMode::Diffusion, diff);
    CHECK(rep.f_star[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(rep.Q_star == doctest::Approx(0.25).epsilon(1e-6));
    // Q history non-increasing in diffusion mode
    for (size_t k = 0; k + 1 < rep.q_history.size(); ++k)
        CHECK(rep.q_history[k + 1] <= rep.q_history[k] + 1e-10);

    SolveParams sub;
    sub.eta0 = 0.5;
    sub.max_iters = 20000;
    sub.grad_tol = 1e-12;
    auto rep2 = solve(path_problem(), SolveMode::Subgradient, sub);
    CHECK(rep2.f_star[1] == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(rep2.Q_star == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("flat optimum of a single directed constraint") {
    Hyperedge e;
    e.tail = {0};
    e.head = {1};
    e.w = 1.0;
    auto h = build_hypergraph(2, {e}, {0}, WeightMode::Unit);
    auto prob = make_label_problem(std::move(h), {{0, 1.0}});
    SolveParams params;
    params.h = 0.2;
    params.grad_tol = 1e-9;
    params.max_time = 100;
    auto rep = solve(prob, SolveMode::Diffusion, params);
    CHECK(rep.Q_star <= 1e-8);
    CHECK(rep.f_star[1] >= 1.0 - 1e-4);
}

TEST_CASE("no edges means nothing moves") {
    auto h = build_hypergraph(2, {}, {0}, WeightMode::Unit);
    DensityVector f0_n = {0.7};
    auto prob = make_label_problem(std::move(h), {{0, 1.0}}, &f0_n);
    auto rep = solve(prob, SolveMode::Diffusion, {});
    CHECK(rep.f_star[1] == doctest::Approx(0.7));
    CHECK(rep.Q_star == doctest::Approx(0.0));
}

TEST_CASE("subgradient inequality holds around random points") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 30; ++trial) {
        RandomGraphSpec spec;
        spec.n = 5;
        spec.num_edges = 6;
        spec.num_stationary = 1 + trial % 2;
        spec.mode = WeightMode::Unit;
        auto h = random_hypergraph(rng, spec);
        auto f = random_density(rng, h.n, trial % 2 == 0);
        auto chk = verify_subgradient(h, f, 100, 1000 + trial);
        CAPTURE(trial);
        CHECK(chk.ok);
    }
}

TEST_CASE("subgradient at a minimizer certifies optimality") {
    auto prob = path_problem();
    SolveParams params;
    params.h = 0.1;
    params.grad_tol = 1e-12;
    params.max_time = 200;
    auto rep = solve(prob, SolveMode::Diffusion, params);
    CHECK(rep.grad_norm_final <= 1e-10);
    auto chk = verify_subgradient(prob.h, rep.f_star, 200, 11);
    CHECK(chk.ok);
}

TEST_CASE("gradient mixture hand example") {
    auto h = build_hypergraph(3, {Hyperedge{{0, 1}, {2}, 1.0}}, {}, WeightMode::Unit);
    DensityVector f = {1, 1, 0};
    auto rep = verify_gradient_mixture(h, f);
    CHECK(rep.feasible);
    CHECK(rep.reconstruction_error <= 1e-8);
    // the class {0,1} needs the half/half mixture of its two orders
    bool found = false;
    for (const auto& w : rep.witnesses) {
        if (w.members == std::vector<int>{0, 1}) {
            found = true;
            double total = 0;
            for (const auto& [perm, weight] : w.distribution) {
                (void)perm;
                total += weight;
            }
            CHECK(total == doctest::Approx(1.0));
            REQUIRE(w.distribution.size() == 2);
            CHECK(w.distribution[0].second == doctest::Approx(0.5));
        }
    }
    CHECK(found);
}

TEST_CASE("distinct coordinates give a point mass") {
    auto h = build_hypergraph(2, {Hyperedge{{0}, {1}, 1.0}}, {}, WeightMode::Unit);
    auto rep = verify_gradient_mixture(h, {1, 0});
    CHECK(rep.feasible);
    for (const auto& w : rep.witnesses) CHECK(w.distribution.size() == 1);
}

TEST_CASE("mixture feasibility on random tied instances") {
    std::mt19937_64 rng(79);
    int done = 0;
    while (done < 40) {
        RandomGraphSpec spec;
        spec.n = 5;
        spec.num_edges = 6;
        spec.num_stationary = done % 2;
        spec.mode = WeightMode::Unit;
        auto h = random_hypergraph(rng, spec);
        auto f = random_density(rng, h.n, true);
        OrderedPartition p = induced_partition(f);
        bool small = true;
        for (const auto& cls : p.classes)
            if (cls.size() > 5) small = false;
        if (!small) continue;
        ++done;
        auto rep = verify_gradient_mixture(h, f);
        CAPTURE(done);
        CHECK(rep.feasible);
        CHECK(rep.reconstruction_error <= 1e-8);
    }
}

TEST_CASE("stationary class mixture matches the derivative") {
    // class {s, v} at equal density with one active outgoing edge from v
    Hyperedge e;
    e.tail = {1};
    e.head = {2};
    e.w = 1.0;
    auto h = build_hypergraph(3, {e}, {0}, WeightMode::Unit);
    DensityVector f = {1.0, 1.0, 0.0};
    auto rep = verify_gradient_mixture(h, f);
    CHECK(rep.feasible);
    CHECK(rep.reconstruction_error <= 1e-8);
}
