#include "botscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "botscope/errors.hpp"

namespace botscope {

void PlantedBotConfig::validate() const {
    if (n_humans + n_bots < 2)
        throw invalid_parameter_error("planted graph needs at least 2 nodes");
    for (const ClassIntensity* ci : {&bot_to_human, &human_to_human, &bot_to_bot, &human_to_bot}) {
        if (ci->mean_edges < 0 || ci->mean_weight < 1)
            throw invalid_parameter_error("intensities must have mean_edges >= 0, mean_weight >= 1");
    }
    bool all_zero = bot_to_human.mean_edges == 0 && human_to_human.mean_edges == 0 &&
                    bot_to_bot.mean_edges == 0 && human_to_bot.mean_edges == 0;
    if (!all_zero && !(bot_to_human.mean_edges > human_to_bot.mean_edges))
        throw invalid_parameter_error(
            "heterophilic regime requires bot->human mean edges > human->bot");
}

namespace {

uint64_t sample_poisson(std::mt19937_64& rng, double mean) {
    if (mean <= 0) return 0;
    std::poisson_distribution<uint64_t> dist(mean);
    return dist(rng);
}

double sample_weight(std::mt19937_64& rng, const ClassIntensity& ci, bool geometric) {
    if (!geometric || ci.mean_weight <= 1.0) return std::max(1.0, std::round(ci.mean_weight));
    // geometric on {1,2,...} with the requested mean
    std::geometric_distribution<uint64_t> dist(1.0 / ci.mean_weight);
    return static_cast<double>(1 + dist(rng));
}

}  // namespace

PlantedGraph generate_planted(const PlantedBotConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    GraphBuilder builder(EdgeRole::Retweet);

    const uint32_t n = cfg.n_humans + cfg.n_bots;
    std::vector<uint32_t> humans, bots;
    Labeling truth(n, 0);
    for (uint32_t k = 0; k < cfg.n_humans; ++k)
        humans.push_back(builder.intern("h" + std::to_string(k)));
    for (uint32_t k = 0; k < cfg.n_bots; ++k) {
        uint32_t idx = builder.intern("b" + std::to_string(k));
        bots.push_back(idx);
        truth[idx] = 1;
    }

    auto spray = [&](const std::vector<uint32_t>& sources, const std::vector<uint32_t>& targets,
                     const ClassIntensity& ci) {
        if (targets.empty() || ci.mean_edges <= 0) return;
        std::uniform_int_distribution<size_t> pick(0, targets.size() - 1);
        for (uint32_t src : sources) {
            uint64_t count = sample_poisson(rng, ci.mean_edges);
            for (uint64_t e = 0; e < count; ++e) {
                uint32_t dst = targets[pick(rng)];
                if (dst == src) continue;
                builder.add_edge(src, dst, sample_weight(rng, ci, cfg.geometric_weights));
            }
        }
    };
    spray(bots, humans, cfg.bot_to_human);
    spray(humans, humans, cfg.human_to_human);
    spray(bots, bots, cfg.bot_to_bot);
    spray(humans, bots, cfg.human_to_bot);

    return {builder.build(), std::move(truth)};
}

void OpinionNetworkConfig::validate() const {
    if (n == 0) throw invalid_parameter_error("opinion network: n must be positive");
    if (!(stubborn_fraction > 0.0 && stubborn_fraction <= 1.0))
        throw invalid_parameter_error("opinion network: stubborn fraction must be in (0,1]");
    if (mean_friends < 0) throw invalid_parameter_error("opinion network: negative density");
    if (rate_min < 1 || rate_max < rate_min)
        throw invalid_parameter_error("opinion network: need 1 <= rate_min <= rate_max");
}

GeneratedOpinionNetwork generate_opinion_network(const OpinionNetworkConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    const uint32_t n = cfg.n;
    uint32_t n_stub = std::max<uint32_t>(1, static_cast<uint32_t>(std::llround(cfg.stubborn_fraction * n)));
    n_stub = std::min(n_stub, n);

    // choose stubborn set by random permutation
    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<uint8_t> stubborn(n, 0);
    for (uint32_t k = 0; k < n_stub; ++k) stubborn[perm[k]] = 1;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> planted(n);
    for (uint32_t i = 0; i < n; ++i) {
        if (stubborn[i]) {
            switch (cfg.dist) {
                case OpinionDistribution::Uniform:
                    planted[i] = unit(rng);
                    break;
                case OpinionDistribution::Polarized:
                    planted[i] = unit(rng) < 0.5 ? 0.08 * unit(rng) : 1.0 - 0.08 * unit(rng);
                    break;
                case OpinionDistribution::Extreme:
                    planted[i] = unit(rng) < 0.5 ? 0.0 : 1.0;
                    break;
            }
        } else {
            planted[i] = 0.3 + 0.4 * unit(rng);  // interior, never interval-stubborn
        }
    }

    std::vector<double> rates(n);
    std::uniform_int_distribution<uint32_t> rate_dist(cfg.rate_min, cfg.rate_max);
    for (uint32_t i = 0; i < n; ++i) rates[i] = static_cast<double>(rate_dist(rng));

    GraphBuilder builder(EdgeRole::Follower);
    for (uint32_t i = 0; i < n; ++i) builder.intern("u" + std::to_string(i));
    // edge (j,i): i follows j
    std::uniform_int_distribution<uint32_t> pick(0, n - 1);
    std::vector<std::vector<uint32_t>> followers(n);  // adjacency for the repair pass
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    for (uint32_t i = 0; i < n; ++i) {
        uint64_t k = sample_poisson(rng, cfg.mean_friends);
        for (uint64_t e = 0; e < k; ++e) {
            uint32_t friend_node = pick(rng);
            if (friend_node == i) continue;
            edges.emplace_back(friend_node, i);
            followers[friend_node].push_back(i);
        }
    }

    if (cfg.repair) {
        // ground every stranded node with one stubborn in-edge, then re-flood
        std::vector<uint8_t> reached(n, 0);
        std::vector<uint32_t> queue;
        auto flood = [&](uint32_t start) {
            queue.push_back(start);
            while (!queue.empty()) {
                uint32_t v = queue.back();
                queue.pop_back();
                for (uint32_t f : followers[v]) {
                    if (!stubborn[f] && !reached[f]) {
                        reached[f] = 1;
                        queue.push_back(f);
                    }
                }
            }
        };
        for (uint32_t i = 0; i < n; ++i)
            if (stubborn[i]) flood(i);
        std::vector<uint32_t> stub_list;
        for (uint32_t k = 0; k < n_stub; ++k) stub_list.push_back(perm[k]);
        std::sort(stub_list.begin(), stub_list.end());
        std::uniform_int_distribution<size_t> pick_stub(0, stub_list.size() - 1);
        for (uint32_t i = 0; i < n; ++i) {
            if (stubborn[i] || reached[i]) continue;
            uint32_t anchor = stub_list[pick_stub(rng)];
            edges.emplace_back(anchor, i);
            followers[anchor].push_back(i);
            reached[i] = 1;
            flood(i);
        }
    }

    for (auto [src, dst] : edges) builder.add_edge(src, dst, 1.0);

    GeneratedOpinionNetwork out;
    out.state.graph = std::make_shared<SocialGraph>(builder.build());
    out.state.stubborn = std::move(stubborn);
    out.state.rate = std::move(rates);
    out.state.opinion.assign(n, 0.0);
    for (uint32_t i = 0; i < n; ++i)
        if (out.state.stubborn[i]) out.state.opinion[i] = planted[i];
    out.planted_opinion = std::move(planted);
    return out;
}

}  // namespace botscope
