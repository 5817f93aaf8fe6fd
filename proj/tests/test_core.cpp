#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dihyper/generator.hpp"
#include "dihyper/hypergraph.hpp"
#include "dihyper/quadratic.hpp"

using namespace dihyper;

namespace {

DirectedHypergraph single_edge(std::vector<int> tail, std::vector<int> head, int n,
                               WeightMode mode = WeightMode::Degree) {
    Hyperedge e;
    e.tail = std::move(tail);
    e.head = std::move(head);
    e.w = 1.0;
    return build_hypergraph(n, {e}, {}, mode);
}

} // namespace

TEST_CASE("construction and weights") {
    auto h = single_edge({0}, {1}, 2, WeightMode::Unit);
    CHECK(h.omega[0] == 1.0);
    CHECK(h.omega[1] == 1.0);

    // degree mode counts each incident edge once per vertex
    Hyperedge e1, e2;
    e1.tail = {0};
    e1.head = {1};
    e2.tail = {0};
    e2.head = {2};
    e1.w = e2.w = 1.0;
    auto g = build_hypergraph(3, {e1, e2});
    CHECK(g.omega[0] == doctest::Approx(2.0));
    CHECK(g.omega[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(build_hypergraph(2, {Hyperedge{{0}, {}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_hypergraph(2, {Hyperedge{{}, {0}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_hypergraph(2, {Hyperedge{{0}, {1}, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_hypergraph(2, {Hyperedge{{0}, {5}, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_hypergraph(2, {Hyperedge{{0}, {1}, 1.0}}, {0}, WeightMode::Custom,
                                     {{0, 1.0}, {1, 1.0}}),
                    std::invalid_argument);
}

TEST_CASE("json ingestion") {
    auto h = parse_hypergraph(R"({"n": 2, "weight_mode": "unit",
        "edges": [{"tail": [0], "head": [1], "w": 1.0}]})");
    CHECK(h.n == 2);
    CHECK(h.omega == std::vector<double>{1.0, 1.0});

    CHECK_THROWS_WITH_AS(parse_hypergraph(R"({"n": 2, "edges": [{"tail": [0], "head": []}]})"),
                         "empty head", std::invalid_argument);

    auto named = parse_hypergraph(R"({"vertices": ["a", "b"], "weight_mode": "unit",
        "edges": [{"tail": ["a"], "head": ["b"], "w": 2.0}]})");
    CHECK(named.edges[0].tail == std::vector<int>{0});
    CHECK(named.edges[0].head == std::vector<int>{1});

    CHECK_THROWS_AS(parse_hypergraph("{"), std::invalid_argument);
}

TEST_CASE("inner product ignores stationary coordinates") {
    auto h3 = build_hypergraph(3, {Hyperedge{{0}, {1}, 1.0}, Hyperedge{{1}, {2}, 1.0}}, {},
                               WeightMode::Unit);
    CHECK(inner_product_omega(h3, {1, 1, 1}, {1, 1, 1}) == doctest::Approx(3.0));

    auto h2 = build_hypergraph(2, {Hyperedge{{0}, {1}, 1.0}}, {}, WeightMode::Unit);
    CHECK(inner_product_omega(h2, {1, -1}, {1, 1}) == doctest::Approx(0.0));

    auto hs = build_hypergraph(2, {Hyperedge{{0}, {1}, 1.0}}, {0}, WeightMode::Custom,
                               {{1, 2.0}});
    CHECK(inner_product_omega(hs, {5, 3}, {5, 3}) == doctest::Approx(18.0));
    CHECK_THROWS_AS(inner_product_omega(hs, {1, 2, 3}, {1, 2}), std::invalid_argument);

    auto phi = measure_vector(hs, {5, 3});
    CHECK(phi == std::vector<double>{6.0});
}

TEST_CASE("expansion") {
    // undirected K2 hyperedge
    Hyperedge e;
    e.tail = {0, 1};
    e.head = {0, 1};
    e.w = 1.0;
    auto k2 = build_hypergraph(2, {e});
    auto rep = expansion(k2, {0});
    CHECK(rep.phi_plus == doctest::Approx(1.0));
    CHECK(rep.phi_minus == doctest::Approx(1.0));
    CHECK(rep.phi == doctest::Approx(1.0));

    auto arrow = single_edge({0}, {1}, 2);
    auto rep2 = expansion(arrow, {1});
    CHECK(rep2.phi_plus == doctest::Approx(0.0));
    CHECK(rep2.phi_minus == doctest::Approx(1.0));
    CHECK(rep2.phi == doctest::Approx(0.0));

    auto cyc = build_hypergraph(2, {Hyperedge{{0}, {1}, 1.0}, Hyperedge{{1}, {0}, 1.0}});
    CHECK(cyc.omega[0] == doctest::Approx(2.0));
    auto rep3 = expansion(cyc, {0});
    CHECK(rep3.phi_plus == doctest::Approx(0.5));
    CHECK(rep3.phi_minus == doctest::Approx(0.5));

    CHECK_THROWS_AS(expansion(arrow, {}), std::invalid_argument);
    CHECK_THROWS_AS(expansion(arrow, {0, 1}), std::invalid_argument);
}

TEST_CASE("brute force phi_H") {
    auto arrow = single_edge({0}, {1}, 2);
    CHECK(brute_force_phi_H(arrow).phi_H == doctest::Approx(0.0));

    Hyperedge e;
    e.tail = {0, 1};
    e.head = {0, 1};
    e.w = 1.0;
    auto k2 = build_hypergraph(2, {e});
    CHECK(brute_force_phi_H(k2).phi_H == doctest::Approx(1.0));

    auto cyc = build_hypergraph(2, {Hyperedge{{0}, {1}, 1.0}, Hyperedge{{1}, {0}, 1.0}});
    CHECK(brute_force_phi_H(cyc).phi_H == doctest::Approx(0.5));

    RandomGraphSpec spec;
    spec.n = 21;
    spec.num_edges = 4;
    std::mt19937_64 rng(7);
    CHECK_THROWS_AS(brute_force_phi_H(random_hypergraph(rng, spec)), std::invalid_argument);
}

TEST_CASE("cut complement symmetry and degree sum") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        RandomGraphSpec spec;
        spec.n = 6;
        spec.num_edges = 7;
        auto h = random_hypergraph(rng, spec);
        std::uniform_int_distribution<uint32_t> md(1, (1u << h.n) - 2);
        uint32_t mask = md(rng);
        std::vector<int> s, comp;
        for (int u = 0; u < h.n; ++u) (mask & (1u << u) ? s : comp).push_back(u);
        auto a = expansion(h, s);
        auto b = expansion(h, comp);
        CHECK(a.out_weight == doctest::Approx(b.in_weight));
        CHECK(a.in_weight == doctest::Approx(b.out_weight));

        double omega_sum = 0, incidence = 0;
        for (int u = 0; u < h.n; ++u) omega_sum += h.omega[u];
        for (const auto& e : h.edges) {
            std::set<int> inc(e.tail.begin(), e.tail.end());
            inc.insert(e.head.begin(), e.head.end());
            incidence += e.w * inc.size();
        }
        CHECK(omega_sum == doctest::Approx(incidence));
    }
}

TEST_CASE("expansion matches D on indicators") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        RandomGraphSpec spec;
        spec.n = 5;
        spec.num_edges = 6;
        auto h = random_hypergraph(rng, spec);
        std::uniform_int_distribution<uint32_t> md(1, (1u << h.n) - 2);
        uint32_t mask = md(rng);
        std::vector<int> s;
        DensityVector chi(h.n, 0.0), neg(h.n, 0.0);
        for (int u = 0; u < h.n; ++u)
            if (mask & (1u << u)) {
                s.push_back(u);
                chi[u] = 1.0;
                neg[u] = -1.0;
            }
        auto rep = expansion(h, s);
        double ws = 0;
        for (int u : s) ws += h.omega[u];
        CHECK(rep.phi_plus == doctest::Approx(2 * quadratic_form(h, chi) / ws));
        CHECK(rep.phi_minus == doctest::Approx(2 * quadratic_form(h, neg) / ws));
    }
}
