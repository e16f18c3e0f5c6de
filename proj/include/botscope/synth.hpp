#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "botscope/energy.hpp"
#include "botscope/graph.hpp"
#include "botscope/opinion.hpp"

namespace botscope {

struct ClassIntensity {
    double mean_edges;   // Poisson mean out-edges per source node
    double mean_weight;  // mean weight per edge
};

// Planted heterophilic bot regime: bots spray retweets at humans, humans
// mostly retweet humans. Requires bot->human mean edges above human->bot.
struct PlantedBotConfig {
    uint32_t n_humans = 450;
    uint32_t n_bots = 100;
    // bots retweet heavily (count x weight), which pins the upper degree
    // percentiles and leaves ordinary human activity below the psi gate
    ClassIntensity bot_to_human{20.0, 4.0};
    ClassIntensity human_to_human{5.0, 1.0};
    ClassIntensity bot_to_bot{1.0, 1.0};
    ClassIntensity human_to_bot{0.5, 1.0};
    bool geometric_weights = true;  // false: every edge gets round(mean_weight)
    uint64_t seed = 1;

    void validate() const;
};

struct PlantedGraph {
    SocialGraph graph;
    Labeling truth;  // by node index, 1 = bot
};

PlantedGraph generate_planted(const PlantedBotConfig& cfg);

enum class OpinionDistribution { Uniform, Polarized, Extreme };

struct OpinionNetworkConfig {
    uint32_t n = 200;
    double stubborn_fraction = 0.2;  // in (0,1]
    OpinionDistribution dist = OpinionDistribution::Polarized;
    double mean_friends = 4.0;  // Poisson mean friend links per node
    uint32_t rate_min = 1;      // rates drawn uniformly in [rate_min, rate_max]
    uint32_t rate_max = 5;
    bool repair = true;  // wire stranded nodes to a stubborn anchor
    uint64_t seed = 1;

    void validate() const;
};

struct GeneratedOpinionNetwork {
    OpinionState state;  // owns the follower graph
    // opinions for every node: stubborn anchors are extreme per dist,
    // non-stubborn get interior values (useful for emitting tweet files)
    std::vector<double> planted_opinion;
};

// Random follower graph where, with repair on, every non-stubborn node has a
// directed influence path from some stubborn node.
GeneratedOpinionNetwork generate_opinion_network(const OpinionNetworkConfig& cfg);

}  // namespace botscope
