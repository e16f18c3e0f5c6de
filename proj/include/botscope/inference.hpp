#pragma once

#include <cstdint>
#include <vector>

#include "botscope/energy.hpp"
#include "botscope/graph.hpp"

namespace botscope {

// Source/sink-augmented capacity graph. Pairwise capacities are symmetric
// (c_(i,j) = c_(j,i)) and stored once per retweet edge, aligned with the
// retweet graph's out-CSR order.
struct EnergyGraph {
    uint32_t n = 0;
    std::vector<double> source_cap;  // c_(s,i)
    std::vector<double> sink_cap;    // c_(i,t)
    std::vector<uint64_t> pair_offsets;
    std::vector<uint32_t> pair_dst;
    std::vector<double> pair_cap;
    // Labeling-independent constant absorbed during construction. This
    // construction absorbs nothing, so it is 0; kept so the cut-weight
    // identity cut = energy + C0 is checkable as stated.
    double constant_offset = 0.0;

    // Cut weight of the s/t partition induced by a labeling (1 = source side).
    double cut_weight(const Labeling& labels) const;
};

struct FlowStats {
    uint64_t phases = 0;
    uint64_t augmentations = 0;
    double flow_value = 0.0;
};

struct CutResult {
    Labeling labels;          // 1 = bot (source side)
    double cut_value = 0.0;   // weight of the returned partition
    double min_energy = 0.0;  // cut_value - constant_offset
    FlowStats flow_stats;
};

// Capacities per the energy-graph construction; all are non-negative for any
// feasible lambda (asserted with tolerance -1e-12, negatives clamped to 0).
EnergyGraph build_energy_graph(const SocialGraph& graph, const EnergyConfig& cfg);

namespace serial {
EnergyGraph build_energy_graph(const SocialGraph& graph, const EnergyConfig& cfg);
}

// Exact MAP labeling: max-flow, then nodes reachable from s in the residual
// graph are labeled bot. Deterministic for a given energy graph.
CutResult min_cut_labels(const EnergyGraph& eg);

// P(node i is a bot | all other labels) = 1 / (1 + exp(delta_i)) where
// delta_i is the exact energy difference of flipping i to bot, over its node
// energy and incident edges in both directions.
std::vector<double> conditional_bot_probability(const SocialGraph& graph, const Labeling& labels,
                                                const EnergyConfig& cfg);

namespace serial {
std::vector<double> conditional_bot_probability(const SocialGraph& graph, const Labeling& labels,
                                                const EnergyConfig& cfg);
}

}  // namespace botscope
