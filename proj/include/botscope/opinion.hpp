#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "botscope/errors.hpp"
#include "botscope/graph.hpp"

namespace botscope {

// Stubborn-anchored opinion model over a follower graph (edge j->i: i follows
// j, so j's posts reach i). Stubborn nodes hold fixed opinions in [0,1];
// everyone has a posting rate >= 0.
struct OpinionState {
    std::shared_ptr<const SocialGraph> graph;
    std::vector<uint8_t> stubborn;  // size n
    std::vector<double> opinion;    // fixed opinion for stubborn nodes; ignored otherwise
    std::vector<double> rate;       // posting rates, >= 0

    uint32_t node_count() const { return graph->node_count(); }
    void validate() const;
};

struct SolverOptions {
    double tol = 1e-10;
    uint64_t max_iter = 100000;
    double damping = 1.0;  // 1 = plain weighted-average sweep
};

struct EquilibriumReport {
    // theta[i]: solved opinion for solvable non-stubborn nodes, the fixed
    // opinion for stubborn nodes, NaN for unreachable nodes.
    std::vector<double> theta;
    std::vector<uint8_t> solvable;      // non-stubborn nodes with a solved opinion
    std::vector<uint32_t> unreachable;  // non-stubborn nodes with no stubborn influence
    uint64_t iterations = 0;
    // max_i |theta_i - rate-weighted friend average|; invariant to rate scaling
    double residual = 0.0;
    bool converged = false;

    double mean_nonstubborn() const;
    size_t solvable_count() const;
};

struct equilibrium_not_converged : infeasibility_error {
    equilibrium_not_converged(const std::string& msg, EquilibriumReport best_iterate)
        : infeasibility_error(msg), best(std::move(best_iterate)) {}
    EquilibriumReport best;
};

// Jacobi fixed-point solve of the equilibrium. Non-stubborn nodes with no
// directed influence path from a positive-rate stubborn node are reported
// unreachable and their (undetermined) contribution is excluded from their
// followers' averages. Exhausting max_iter above tol throws
// equilibrium_not_converged carrying the best iterate.
EquilibriumReport solve_equilibrium(const OpinionState& state, const SolverOptions& opts = {});

namespace serial {
EquilibriumReport solve_equilibrium(const OpinionState& state, const SolverOptions& opts = {});
}

using StubbornnessSchedule = std::function<double(uint64_t updates_received)>;

// w(n) = 1/(n+1): opinions become running means of received posts.
inline double harmonic_stubbornness(uint64_t n) { return 1.0 / static_cast<double>(n + 1); }

struct SimulationOptions {
    uint64_t events = 100000;
    uint64_t seed = 1;
    double noise_sigma = 0.0;  // post noise; posts are clamped to [0,1]
    double initial_opinion = 0.5;
    uint64_t record_every = 0;  // 0: record only the final state
    StubbornnessSchedule schedule = harmonic_stubbornness;
};

struct SimulationResult {
    std::vector<double> final_opinion;
    // (event index, mean non-stubborn opinion) samples
    std::vector<std::pair<uint64_t, double>> trajectory;
    uint64_t posts = 0;
};

// Event-driven simulation: posters fire proportionally to their rates
// (competing Poisson clocks), followers fold each post into their opinion
// with weight w(n).
SimulationResult simulate(const OpinionState& state, const SimulationOptions& opts);

}  // namespace botscope
