#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dihyper/densest.hpp"
#include "dihyper/generator.hpp"
#include "dihyper/maxflow.hpp"

using namespace dihyper;

namespace {

DensestInstance two_vertex(bool incoming_to_a) {
    DensestInstance inst;
    inst.vertices = {0, 1};
    inst.omega = {{0, 1.0}, {1, 1.0}};
    InstanceEdge e;
    e.edge_id = 0;
    e.c = 1.0;
    if (incoming_to_a) {
        e.members = {0};
        inst.incoming.push_back(e);
    } else {
        e.members = {0, 1};
        inst.outgoing.push_back(e);
    }
    return inst;
}

} // namespace

TEST_CASE("max flow basics") {
    FlowNetwork net(2);
    net.add_arc(0, 1, 3.0);
    CHECK(net.max_flow(0, 1) == doctest::Approx(3.0));

    FlowNetwork two(4);
    two.add_arc(0, 1, 1.0);
    two.add_arc(1, 3, 1.0);
    two.add_arc(0, 2, 2.0);
    two.add_arc(2, 3, 2.0);
    CHECK(two.max_flow(0, 3) == doctest::Approx(3.0));

    // diamond with a unit bottleneck
    FlowNetwork diamond(4);
    diamond.add_arc(0, 1, 5.0);
    diamond.add_arc(1, 2, 1.0);
    diamond.add_arc(2, 3, 5.0);
    CHECK(diamond.max_flow(0, 3) == doctest::Approx(1.0));
    auto side_min = diamond.min_cut_source_side(false);
    auto side_max = diamond.min_cut_source_side(true);
    CHECK(side_min[0]);
    CHECK_FALSE(side_min[3]);
    CHECK(side_max[0]);
    CHECK(side_max[1]);
    CHECK_FALSE(side_max[2]); // 2 still reaches the sink
    CHECK_FALSE(side_max[3]);

    FlowNetwork inf_net(3);
    inf_net.add_arc(0, 1, FlowNetwork::kInfiniteCapacity);
    inf_net.add_arc(1, 2, 2.5);
    CHECK(inf_net.max_flow(0, 2) == doctest::Approx(2.5));
}

TEST_CASE("density formula examples") {
    auto out_inst = two_vertex(false);
    CHECK(density(out_inst, {0}, DensestMode::Max) == doctest::Approx(-1.0));
    CHECK(density(out_inst, {0, 1}, DensestMode::Max) == doctest::Approx(-0.5));

    auto in_inst = two_vertex(true);
    CHECK(density(in_inst, {0}, DensestMode::Max) == doctest::Approx(1.0));
    CHECK(density(in_inst, {1}, DensestMode::Max) == doctest::Approx(0.0));
    CHECK(density(in_inst, {0, 1}, DensestMode::Max) == doctest::Approx(0.5));

    // a stationary member forces density zero
    DensestInstance st = two_vertex(true);
    st.vertices = {0, 1, 2};
    st.stationary = {2};
    CHECK(density(st, {0, 2}, DensestMode::Max) == doctest::Approx(0.0));
    CHECK_THROWS_AS(density(st, {}, DensestMode::Max), std::invalid_argument);
}

TEST_CASE("solve examples") {
    auto in_inst = two_vertex(true);
    auto s1 = solve(in_inst, DensestMode::Max);
    CHECK(s1.P == std::vector<int>{0});
    CHECK(s1.density == doctest::Approx(1.0));

    auto out_inst = two_vertex(false);
    auto s2 = solve(out_inst, DensestMode::Max);
    CHECK(s2.P == std::vector<int>{0, 1});
    CHECK(s2.density == doctest::Approx(-0.5));

    // least densest with a stationary companion
    DensestInstance st;
    st.vertices = {0, 1};
    st.stationary = {1};
    st.omega = {{0, 1.0}};
    InstanceEdge e;
    e.edge_id = 0;
    e.c = 1.0;
    e.members = {0};
    st.outgoing.push_back(e);
    auto s3 = solve(st, DensestMode::Min);
    CHECK(s3.P == std::vector<int>{0});
    CHECK(s3.density == doctest::Approx(-1.0));

    // degenerate: no edges
    DensestInstance empty;
    empty.vertices = {0, 1, 2};
    empty.omega = {{0, 1.0}, {1, 1.0}, {2, 1.0}};
    auto s4 = solve(empty, DensestMode::Max);
    CHECK(s4.P == std::vector<int>{0, 1, 2});
    CHECK(s4.density == doctest::Approx(0.0));
}

TEST_CASE("lex compare") {
    CHECK(lex_compare({3, 43.5}, {1, 95}) == 1);
    CHECK(lex_compare({1, 2}, {1, 2}) == 0);
    CHECK(lex_compare({0, -1}, {0, 0}) == -1);
    CHECK_THROWS_AS(lex_compare({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("solver agrees with enumeration") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
        DensestInstance inst = random_densest_instance(rng, 10, trial % 2 == 1);
        for (DensestMode mode : {DensestMode::Max, DensestMode::Min}) {
            auto fast = solve(inst, mode);
            auto slow = solve_by_enumeration(inst, mode);
            CAPTURE(trial);
            CHECK(fast.density == doctest::Approx(slow.density).epsilon(1e-12));
            CHECK(fast.P == slow.P);
        }
    }
}

TEST_CASE("solver attains the enumerated optimal ratio") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        DensestInstance inst = random_densest_instance(rng, 8, false);
        const int nu = static_cast<int>(inst.vertices.size());
        auto sol = solve(inst, DensestMode::Max);
        double ratio_best = -1e100;
        for (uint32_t mask = 1; mask < (1u << nu); ++mask) {
            std::vector<int> x;
            for (int i = 0; i < nu; ++i)
                if (mask & (1u << i)) x.push_back(inst.vertices[i]);
            ratio_best = std::max(ratio_best, density(inst, x, DensestMode::Max));
        }
        CHECK(sol.density == doctest::Approx(ratio_best).epsilon(1e-12));
    }
}

TEST_CASE("reported density is exact for the returned set") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        DensestInstance inst = random_densest_instance(rng, 8, false);
        auto sol = solve(inst, DensestMode::Max);
        CHECK(density(inst, sol.P, DensestMode::Max) == doctest::Approx(sol.density));
        auto sol_min = solve(inst, DensestMode::Min);
        CHECK(density(inst, sol_min.P, DensestMode::Min) == doctest::Approx(sol_min.density));
    }
}
