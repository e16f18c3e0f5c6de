// Benchmarks the OpenMP kernels against their serial reference
// implementations: energy-graph build, total energy, conditional bot
// probabilities, and the equilibrium Jacobi sweep.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "botscope/energy.hpp"
#include "botscope/inference.hpp"
#include "botscope/opinion.hpp"
#include "botscope/synth.hpp"

using namespace botscope;

namespace {

template <typename Fn>
double time_ms(Fn&& fn, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
           serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    uint32_t humans = 45000, bots = 5000;
    uint32_t opinion_nodes = 200000;
    int repeats = 3;
    uint64_t seed = 7;

    CLI::App app{"serial vs OpenMP kernel benchmark"};
    app.add_option("--humans", humans, "");
    app.add_option("--bots", bots, "");
    app.add_option("--opinion-nodes", opinion_nodes, "");
    app.add_option("--repeats", repeats, "");
    app.add_option("--seed", seed, "");
    CLI11_PARSE(app, argc, argv);

    printf("threads: %d\n", omp_get_max_threads());

    PlantedBotConfig pcfg;
    pcfg.n_humans = humans;
    pcfg.n_bots = bots;
    pcfg.seed = seed;
    PlantedGraph planted = generate_planted(pcfg);
    printf("retweet graph: %u nodes, %zu edges\n", planted.graph.node_count(),
           planted.graph.edge_count());

    EnergyConfig cfg;
    cfg.alpha_out = degree_percentile(planted.graph, StrengthKind::Out, 99);
    cfg.alpha_in = degree_percentile(planted.graph, StrengthKind::In, 99);

    printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    EnergyGraph eg;
    report("build_energy_graph",
           time_ms([&] { eg = serial::build_energy_graph(planted.graph, cfg); }, repeats),
           time_ms([&] { eg = build_energy_graph(planted.graph, cfg); }, repeats));

    CutResult cut = min_cut_labels(eg);
    report("total_energy",
           time_ms([&] { (void)serial::total_energy(planted.graph, cut.labels, cfg); }, repeats),
           time_ms([&] { (void)total_energy(planted.graph, cut.labels, cfg); }, repeats));

    report("conditional_probability",
           time_ms([&] { (void)serial::conditional_bot_probability(planted.graph, cut.labels, cfg); },
                   repeats),
           time_ms([&] { (void)conditional_bot_probability(planted.graph, cut.labels, cfg); },
                   repeats));

    OpinionNetworkConfig ocfg;
    ocfg.n = opinion_nodes;
    ocfg.mean_friends = 8;
    ocfg.stubborn_fraction = 0.05;
    ocfg.seed = seed;
    GeneratedOpinionNetwork net = generate_opinion_network(ocfg);
    printf("follower graph: %u nodes, %zu edges\n", net.state.graph->node_count(),
           net.state.graph->edge_count());

    SolverOptions sopts;
    report("solve_equilibrium",
           time_ms([&] { (void)serial::solve_equilibrium(net.state, sopts); }, repeats),
           time_ms([&] { (void)solve_equilibrium(net.state, sopts); }, repeats));

    return 0;
}
