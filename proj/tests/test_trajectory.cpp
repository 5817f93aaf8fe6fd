#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "dihyper/generator.hpp"
#include "dihyper/quadratic.hpp"
#include "dihyper/trajectory.hpp"

using namespace dihyper;

namespace {

Hyperedge he(std::vector<int> tail, std::vector<int> head, double w = 1.0) {
    Hyperedge e;
    e.tail = std::move(tail);
    e.head = std::move(head);
    e.w = w;
    return e;
}

} // namespace

TEST_CASE("single explicit euler step") {
    auto h = build_hypergraph(2, {he({0}, {1})});
    auto f = step(h, {1, 0}, 0.1, IntegratorMethod::Euler);
    CHECK(f[0] == doctest::Approx(0.9));
    CHECK(f[1] == doctest::Approx(0.1));

    auto c = step(h, {2, 2}, 0.5, IntegratorMethod::Euler);
    CHECK(c[0] == doctest::Approx(2.0));
    CHECK(c[1] == doctest::Approx(2.0));

    CHECK_THROWS_AS(step(h, {1, 0}, 0.0, IntegratorMethod::Euler), std::invalid_argument);
}

TEST_CASE("euler tracks the closed-form single-edge trajectory") {
    auto h = build_hypergraph(2, {he({0}, {1})});
    IntegratorConfig cfg;
    cfg.h = 1e-4;
    cfg.max_time = 1.0;
    cfg.record_every = 10000;
    auto recs = run(h, {1, 0}, cfg);
    const auto& last = recs.back();
    CHECK(last.t == doctest::Approx(1.0));
    CHECK(last.f[0] == doctest::Approx((1 + std::exp(-2.0)) / 2).epsilon(1e-3));
}

TEST_CASE("rk4 is much closer than euler at the same step") {
    auto h = build_hypergraph(2, {he({0}, {1})});
    IntegratorConfig cfg;
    cfg.h = 1e-2;
    cfg.max_time = 1.0;
    cfg.record_every = 100;
    cfg.method = IntegratorMethod::RK4;
    auto recs = run(h, {1, 0}, cfg);
    CHECK(recs.back().f[0] == doctest::Approx((1 + std::exp(-2.0)) / 2).epsilon(1e-8));
}

TEST_CASE("long horizon converges to the conserved mean") {
    auto h = build_hypergraph(2, {he({0}, {1})});
    IntegratorConfig cfg;
    cfg.h = 1e-3;
    cfg.max_time = 20.0;
    cfg.record_every = 1000;
    auto recs = run(h, {1, 0}, cfg);
    CHECK(recs.back().f[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(recs.back().f[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(recs.back().Q == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("stationary path instance settles at the midpoint") {
    auto h = build_hypergraph(3, {he({0, 1}, {0, 1}), he({1, 2}, {1, 2})}, {0, 2},
                              WeightMode::Unit);
    DensityVector f0 = {0.0, 0.87, 1.0};
    IntegratorConfig cfg;
    cfg.h = 1e-2;
    cfg.max_time = 20.0;
    cfg.record_every = 100;
    auto recs = run(h, f0, cfg);
    CHECK(recs.back().f[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(recs.back().Q == doctest::Approx(0.25).epsilon(1e-6));
    CHECK_FALSE(recs.back().D.has_value());
}

TEST_CASE("constant start never moves") {
    auto h = build_hypergraph(3, {he({0, 1}, {1, 2})});
    IntegratorConfig cfg;
    cfg.max_time = 1.0;
    auto recs = run(h, {2, 2, 2}, cfg);
    for (const auto& r : recs)
        for (double x : r.f) CHECK(x == doctest::Approx(2.0));
}

TEST_CASE("Q and D decrease along trajectories; measure is conserved") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 15; ++trial) {
        RandomGraphSpec spec;
        spec.n = 6;
        spec.num_edges = 8;
        spec.mode = WeightMode::Degree;
        auto h = random_hypergraph(rng, spec);
        auto f0 = random_density(rng, h.n, false);
        IntegratorConfig cfg;
        cfg.record_every = 1;
        cfg.max_time = 100 * default_step(h);
        auto recs = run(h, f0, cfg);
        double hstep = recs[1].t - recs[0].t;
        double max_grad2 = 0;
        for (const auto& r : recs) max_grad2 = std::max(max_grad2, r.grad_norm * r.grad_norm);
        double slack = 10 * hstep * hstep * std::max(1.0, max_grad2);

        DensityVector ones(h.n, 1.0);
        double measure0 = inner_product_omega(h, ones, recs.front().f);
        for (size_t k = 0; k + 1 < recs.size(); ++k) {
            CHECK(recs[k + 1].Q <= recs[k].Q + slack);
            REQUIRE(recs[k].D.has_value());
            CHECK(*recs[k + 1].D <= *recs[k].D + slack);
        }
        for (const auto& r : recs)
            CHECK(inner_product_omega(h, ones, r.f) ==
                  doctest::Approx(measure0).epsilon(1e-9));
    }
}

TEST_CASE("gradient stop terminates early") {
    auto h = build_hypergraph(2, {he({0}, {1})});
    IntegratorConfig cfg;
    cfg.h = 1e-3;
    cfg.max_time = 1e6;
    cfg.stop_grad_tol = 1e-6;
    cfg.record_every = 100000;
    auto recs = run(h, {1, 0}, cfg);
    CHECK(recs.back().grad_norm <= 1e-6);
    CHECK(recs.back().t < 1e6);
}

TEST_CASE("csv layout") {
    auto h = build_hypergraph(2, {he({0}, {1})});
    IntegratorConfig cfg;
    cfg.h = 0.25;
    cfg.max_time = 0.5;
    auto recs = run(h, {1, 0}, cfg);
    std::ostringstream os;
    write_trajectory_csv(os, recs);
    auto text = os.str();
    CHECK(text.rfind("t,Q,D,grad_norm\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(recs.size()) + 1);

    // stationary case leaves the D column empty
    auto hs = build_hypergraph(2, {he({0}, {1})}, {0}, WeightMode::Unit);
    auto recs2 = run(hs, {1, 0}, cfg);
    std::ostringstream os2;
    write_trajectory_csv(os2, recs2);
    CHECK(os2.str().find(",,") != std::string::npos);
}
