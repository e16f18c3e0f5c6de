#include <doctest.h>

#include <cmath>
#include <random>

#include "botscope/errors.hpp"
#include "botscope/opinion.hpp"
#include "botscope/synth.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace botscope;
using helpers::make_follower;
using helpers::make_state;

TEST_CASE("two stubborn anchors with equal rates average to one half") {
    // u (node 2) follows s0 (0) and s1 (1): edges (j,i) with i the follower
    OpinionState st = make_state(make_follower(3, {{0, 2}, {1, 2}}), {{0, 0.0}, {1, 1.0}});
    EquilibriumReport rep = solve_equilibrium(st);
    CHECK(rep.theta[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.unreachable.empty());
    CHECK(rep.residual <= 1e-10);
}

TEST_CASE("rates weight the anchors") {
    OpinionState st = make_state(make_follower(3, {{0, 2}, {1, 2}}), {{0, 1.0}, {1, 0.0}},
                                 {2.0, 1.0, 1.0});
    EquilibriumReport rep = solve_equilibrium(st);
    CHECK(rep.theta[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("a cycle with no stubborn inflow is reported unreachable") {
    // nodes 1,2 follow each other; stubborn 0 is isolated
    OpinionState st = make_state(make_follower(3, {{1, 2}, {2, 1}}), {{0, 1.0}});
    EquilibriumReport rep = solve_equilibrium(st);
    REQUIRE(rep.unreachable.size() == 2);
    CHECK(std::isnan(rep.theta[1]));
    CHECK(std::isnan(rep.theta[2]));
    CHECK(rep.solvable_count() == 0);
}

TEST_CASE("unreachable friends are excluded, reachable followers still solve") {
    // u2 follows stubborn s0 and unreachable u1 (which follows nobody)
    OpinionState st = make_state(make_follower(3, {{0, 2}, {1, 2}}), {{0, 0.75}});
    EquilibriumReport rep = solve_equilibrium(st);
    CHECK(rep.unreachable == std::vector<uint32_t>{1});
    CHECK(rep.theta[2] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("zero-rate stubborn node grounds nothing") {
    OpinionState st = make_state(make_follower(2, {{0, 1}}), {{0, 1.0}}, {0.0, 1.0});
    EquilibriumReport rep = solve_equilibrium(st);
    CHECK(rep.unreachable == std::vector<uint32_t>{1});
}

TEST_CASE("solver throws with best iterate when max_iter is exhausted") {
    // a long chain converges slowly
    std::vector<helpers::E> edges;
    const uint32_t n = 40;
    for (uint32_t i = 0; i + 1 < n; ++i) {
        edges.push_back({i, i + 1});
        if (i > 0) edges.push_back({i + 1, i});
    }
    OpinionState st = make_state(make_follower(n, edges), {{0, 1.0}});
    SolverOptions opts;
    opts.max_iter = 3;
    try {
        solve_equilibrium(st, opts);
        FAIL("expected equilibrium_not_converged");
    } catch (const equilibrium_not_converged& e) {
        CHECK(e.best.residual > opts.tol);
        CHECK(e.best.iterations == 3);
        CHECK(e.best.theta.size() == n);
    }
    // and converges when allowed to run
    EquilibriumReport rep = solve_equilibrium(st);
    for (uint32_t i = 1; i < n; ++i) CHECK(rep.theta[i] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fixed-point solution matches the dense direct solve") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        OpinionNetworkConfig cfg;
        cfg.n = 30 + static_cast<uint32_t>(seed * 7 % 170);
        cfg.seed = seed;
        cfg.stubborn_fraction = 0.15;
        cfg.mean_friends = 4.0;
        GeneratedOpinionNetwork net = generate_opinion_network(cfg);
        EquilibriumReport rep = solve_equilibrium(net.state);
        REQUIRE(rep.unreachable.empty());
        auto dense = oracles::dense_equilibrium(net.state);
        for (uint32_t i = 0; i < cfg.n; ++i) {
            if (!net.state.stubborn[i]) REQUIRE(std::abs(rep.theta[i] - dense[i]) <= 1e-8);
        }
    }
}

TEST_CASE("parallel and serial solver sweeps agree") {
    OpinionNetworkConfig cfg;
    cfg.n = 5000;
    cfg.seed = 9;
    cfg.mean_friends = 6.0;
    GeneratedOpinionNetwork net = generate_opinion_network(cfg);
    EquilibriumReport a = solve_equilibrium(net.state);
    EquilibriumReport b = serial::solve_equilibrium(net.state);
    CHECK(a.iterations == b.iterations);
    for (uint32_t i = 0; i < cfg.n; ++i) {
        if (std::isnan(a.theta[i]))
            CHECK(std::isnan(b.theta[i]));
        else
            CHECK(a.theta[i] == doctest::Approx(b.theta[i]).epsilon(1e-13));
    }
}

TEST_CASE("rate scaling leaves the equilibrium unchanged") {
    OpinionNetworkConfig cfg;
    cfg.n = 120;
    cfg.seed = 77;
    GeneratedOpinionNetwork net = generate_opinion_network(cfg);
    EquilibriumReport base = solve_equilibrium(net.state);
    for (double c : {0.01, 137.0}) {
        OpinionState scaled = net.state;
        for (auto& r : scaled.rate) r *= c;
        EquilibriumReport rep = solve_equilibrium(scaled);
        for (uint32_t i = 0; i < cfg.n; ++i) {
            if (!net.state.stubborn[i]) CHECK(std::abs(rep.theta[i] - base.theta[i]) <= 1e-8);
        }
    }
}

TEST_CASE("maximum principle: opinions stay inside the stubborn range") {
    for (uint64_t seed = 100; seed < 115; ++seed) {
        OpinionNetworkConfig cfg;
        cfg.n = 60;
        cfg.seed = seed;
        cfg.dist = OpinionDistribution::Uniform;
        GeneratedOpinionNetwork net = generate_opinion_network(cfg);
        double lo = 1.0, hi = 0.0;
        for (uint32_t i = 0; i < cfg.n; ++i) {
            if (net.state.stubborn[i]) {
                lo = std::min(lo, net.state.opinion[i]);
                hi = std::max(hi, net.state.opinion[i]);
            }
        }
        EquilibriumReport rep = solve_equilibrium(net.state);
        for (uint32_t i = 0; i < cfg.n; ++i) {
            if (!net.state.stubborn[i] && rep.solvable[i]) {
                CHECK(rep.theta[i] >= lo - 1e-9);
                CHECK(rep.theta[i] <= hi + 1e-9);
            }
        }
    }
}

TEST_CASE("equilibrium is linear in the stubborn opinions") {
    OpinionNetworkConfig cfg;
    cfg.n = 80;
    cfg.seed = 4242;
    cfg.dist = OpinionDistribution::Uniform;
    GeneratedOpinionNetwork net = generate_opinion_network(cfg);
    EquilibriumReport base = solve_equilibrium(net.state);

    const double a = 0.5, b = 0.25;
    OpinionState affine = net.state;
    for (uint32_t i = 0; i < cfg.n; ++i)
        if (affine.stubborn[i]) affine.opinion[i] = a * affine.opinion[i] + b;
    EquilibriumReport rep = solve_equilibrium(affine);
    for (uint32_t i = 0; i < cfg.n; ++i) {
        if (!net.state.stubborn[i] && base.solvable[i])
            CHECK(std::abs(rep.theta[i] - (a * base.theta[i] + b)) <= 1e-8);
    }
}

TEST_CASE("simulation: all-stubborn networks never move") {
    OpinionState st = make_state(make_follower(3, {{0, 1}, {1, 2}}),
                                 {{0, 0.2}, {1, 0.6}, {2, 0.9}});
    SimulationOptions opts;
    opts.events = 5000;
    opts.seed = 3;
    SimulationResult res = simulate(st, opts);
    CHECK(res.final_opinion[0] == 0.2);
    CHECK(res.final_opinion[1] == 0.6);
    CHECK(res.final_opinion[2] == 0.9);
}

TEST_CASE("simulation approaches the solver equilibrium on a triangle") {
    // two stubborn, one free: u follows both
    OpinionState st = make_state(make_follower(3, {{0, 2}, {1, 2}}), {{0, 0.1}, {1, 0.9}});
    EquilibriumReport rep = solve_equilibrium(st);
    SimulationOptions opts;
    opts.events = 100000;
    opts.seed = 11;
    SimulationResult res = simulate(st, opts);
    CHECK(res.final_opinion[2] == doctest::Approx(rep.theta[2]).epsilon(0.05));
}

TEST_CASE("a single stubborn source pulls a follower line to its opinion") {
    // 0 stubborn (opinion 1); 1 follows 0; 2 follows 1
    OpinionState st = make_state(make_follower(3, {{0, 1}, {1, 2}}), {{0, 1.0}});
    SimulationOptions opts;
    opts.events = 100000;
    opts.seed = 5;
    SimulationResult res = simulate(st, opts);
    CHECK(res.final_opinion[1] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.final_opinion[2] == doctest::Approx(1.0).epsilon(0.01));
    CHECK(!res.trajectory.empty());
    CHECK(res.trajectory.back().first == opts.events);
}

TEST_CASE("post noise is mean-invariant at the equilibrium") {
    OpinionState st = make_state(make_follower(3, {{0, 2}, {1, 2}}), {{0, 0.1}, {1, 0.9}});
    EquilibriumReport rep = solve_equilibrium(st);
    SimulationOptions opts;
    opts.events = 100000;
    opts.seed = 21;
    opts.noise_sigma = 0.2;
    SimulationResult res = simulate(st, opts);
    CHECK(res.final_opinion[2] == doctest::Approx(rep.theta[2]).epsilon(0.05));
}

TEST_CASE("simulation requires a positive rate somewhere") {
    OpinionState st = make_state(make_follower(2, {{0, 1}}), {{0, 1.0}}, {0.0, 0.0});
    CHECK_THROWS_AS(simulate(st, {}), invalid_parameter_error);
}

TEST_CASE("state validation catches bad inputs") {
    OpinionState st = make_state(make_follower(2, {{0, 1}}), {{0, 1.5}});
    CHECK_THROWS_AS(solve_equilibrium(st), invalid_parameter_error);  // opinion out of range

    OpinionState retweet_role = make_state(helpers::make_retweet(2, {{0, 1}}), {{0, 1.0}});
    CHECK_THROWS_AS(solve_equilibrium(retweet_role), invalid_parameter_error);

    OpinionState neg_rate = make_state(make_follower(2, {{0, 1}}), {{0, 1.0}}, {1.0, -2.0});
    CHECK_THROWS_AS(solve_equilibrium(neg_rate), invalid_parameter_error);
}
