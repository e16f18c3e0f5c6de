#pragma once

#include <cstdint>
#include <vector>

#include "botscope/opinion.hpp"

namespace botscope {

// How target nodes are taken out of the network for the counterfactual run:
// Delete removes the nodes and all incident edges; Silence keeps them but
// zeroes their posting rates (sensitivity analysis only).
enum class RemovalMode { Delete, Silence };

struct GhicOptions {
    SolverOptions solver;
    RemovalMode mode = RemovalMode::Delete;
};

struct CentralityResult {
    double delta;         // mean_with - mean_without over the common node set
    double mean_with;
    double mean_without;
    size_t evaluated;     // |common node set|
    size_t dropped;       // non-stubborn nodes outside S unsolvable in either run
};

// Generalized harmonic influence centrality of the target set: equilibrium
// mean shift caused by removing the targets, averaged over non-stubborn
// non-target nodes solvable in both scenarios. Empty target set gives 0.
CentralityResult ghic(const OpinionState& base, const std::vector<uint32_t>& targets,
                      const GhicOptions& opts = {});

// Mean non-stubborn equilibrium opinion with every stubborn opinion zeroed
// except node i's, which is set to 1. i must be stubborn.
double harmonic_influence_centrality(const OpinionState& base, uint32_t node,
                                     const SolverOptions& opts = {});

}  // namespace botscope
