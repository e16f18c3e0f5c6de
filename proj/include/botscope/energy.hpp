#pragma once

#include <cstdint>
#include <vector>

#include "botscope/graph.hpp"

namespace botscope {

// Per-node binary labels, 1 = bot.
using Labeling = std::vector<uint8_t>;

// Link-energy coefficients lambda_{ab} for an edge whose source carries label
// a and target label b. Validated eagerly: construction rejects any tuple
// violating the feasibility constraints, so downstream code may assume them.
struct LambdaParams {
    double l10, l00, l11, l01;

    LambdaParams(double lambda10, double lambda00, double lambda11, double lambda01 = 1.0);

    double coeff(uint8_t src_label, uint8_t dst_label) const {
        return src_label ? (dst_label ? l11 : l10) : (dst_label ? l01 : l00);
    }
};

// Centroid of the (l00, l11) feasibility polygon with l10 pinned to its lower
// bound l00 + l11 - 1. Vertices: (1/3,1), (1,1), (1/2,1/2).
LambdaParams lambda_centroid();

enum class NodeEnergyMode { Zero, Prior };

struct EnergyConfig {
    LambdaParams lambda = lambda_centroid();
    double gamma = 1.0;
    double alpha_out = 0.0;  // must be set > 0 before use
    double alpha_in = 0.0;
    NodeEnergyMode node_energy_mode = NodeEnergyMode::Zero;
    // Prior mode: per-node bot prior, clamped to [kPriorClamp, 1-kPriorClamp].
    std::vector<double> prior;

    static constexpr double kPriorClamp = 1e-6;

    void validate(uint32_t node_count) const;
};

// Degree-gated link-energy kernel. Zero when either degree is zero;
// monotone non-decreasing in w, z_out and z_in; bounded by gamma*w.
double psi(double w_ij, double z_out_i, double z_in_j, const EnergyConfig& cfg);

// Node energy phi(i, label): 0 in Zero mode; -log(1-pi) / -log(pi) in Prior
// mode for labels 0 / 1.
double node_energy(const EnergyConfig& cfg, uint32_t node, uint8_t label);

// Total Ising energy: sum of node energies plus lambda-weighted link energies
// over the retweet edges. Non-edges contribute nothing.
double total_energy(const SocialGraph& graph, const Labeling& labels, const EnergyConfig& cfg);

namespace serial {
double total_energy(const SocialGraph& graph, const Labeling& labels, const EnergyConfig& cfg);
}

}  // namespace botscope
