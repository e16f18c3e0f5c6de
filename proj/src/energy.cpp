#include "botscope/energy.hpp"

#include <cmath>
#include <string>

#include "botscope/errors.hpp"

namespace botscope {

namespace {
constexpr double kFeasTol = 1e-12;
}

LambdaParams::LambdaParams(double lambda10, double lambda00, double lambda11, double lambda01)
    : l10(lambda10), l00(lambda00), l11(lambda11), l01(lambda01) {
    auto fail = [&](const char* constraint) {
        throw invalid_parameter_error(std::string("lambda parameters violate ") + constraint +
                                      " constraint: (l10,l00,l11,l01)=(" + std::to_string(l10) + "," +
                                      std::to_string(l00) + "," + std::to_string(l11) + "," +
                                      std::to_string(l01) + ")");
    };
    if (std::abs(l01 - 1.0) > kFeasTol) fail("normalization (l01 = 1)");
    if (!(l10 >= -kFeasTol && l10 <= l00 + kFeasTol && l00 <= l11 + kFeasTol && l11 <= l01 + kFeasTol))
        fail("heterophily/homophily ordering (0 <= l10 <= l00 <= l11 <= l01)");
    if (l10 + l01 + kFeasTol < l00 + l11) fail("submodularity (l10 + l01 >= l00 + l11)");
    if (2 * l00 + l10 - l01 < -kFeasTol) fail("edge non-negativity (2*l00 + l10 - l01 >= 0)");
}

LambdaParams lambda_centroid() {
    // vertex centroid of the triangle {(1/3,1), (1,1), (1/2,1/2)}
    double l00 = (1.0 / 3.0 + 1.0 + 0.5) / 3.0;
    double l11 = (1.0 + 1.0 + 0.5) / 3.0;
    double l10 = l00 + l11 - 1.0;
    return LambdaParams(l10, l00, l11, 1.0);
}

void EnergyConfig::validate(uint32_t node_count) const {
    if (!(gamma > 0)) throw invalid_parameter_error("energy config: gamma must be > 0");
    if (!(alpha_out > 0) || !(alpha_in > 0))
        throw invalid_parameter_error("energy config: alpha_out and alpha_in must be > 0");
    if (node_energy_mode == NodeEnergyMode::Prior && prior.size() != node_count)
        throw invalid_parameter_error("energy config: prior scores missing (need one per node)");
}

double psi(double w_ij, double z_out_i, double z_in_j, const EnergyConfig& cfg) {
    if (z_out_i <= 0.0 || z_in_j <= 0.0) return 0.0;
    double expo = cfg.alpha_out / z_out_i + cfg.alpha_in / z_in_j - 2.0;
    return cfg.gamma * w_ij / (1.0 + std::exp(expo));
}

double node_energy(const EnergyConfig& cfg, uint32_t node, uint8_t label) {
    if (cfg.node_energy_mode == NodeEnergyMode::Zero) return 0.0;
    if (node >= cfg.prior.size())
        throw invalid_parameter_error("node energy: no prior score for node " + std::to_string(node));
    double pi = cfg.prior[node];
    pi = std::max(EnergyConfig::kPriorClamp, std::min(1.0 - EnergyConfig::kPriorClamp, pi));
    return label ? -std::log(pi) : -std::log(1.0 - pi);
}

namespace {

double link_energy_sum_range(const SocialGraph& g, const Labeling& labels, const EnergyConfig& cfg,
                             uint32_t node_begin, uint32_t node_end) {
    double sum = 0.0;
    for (uint32_t i = node_begin; i < node_end; ++i) {
        auto nbrs = g.out_neighbors(i);
        auto ws = g.out_weights(i);
        double zi = g.out_strength(i);
        for (size_t k = 0; k < nbrs.size(); ++k) {
            uint32_t j = nbrs[k];
            sum += cfg.lambda.coeff(labels[i], labels[j]) * psi(ws[k], zi, g.in_strength(j), cfg);
        }
    }
    return sum;
}

double node_energy_sum_range(const Labeling& labels, const EnergyConfig& cfg, uint32_t begin,
                             uint32_t end) {
    if (cfg.node_energy_mode == NodeEnergyMode::Zero) return 0.0;
    double sum = 0.0;
    for (uint32_t i = begin; i < end; ++i) sum += node_energy(cfg, i, labels[i]);
    return sum;
}

void check_labels(const SocialGraph& graph, const Labeling& labels) {
    if (labels.size() != graph.node_count())
        throw invalid_parameter_error("labeling size does not match graph node count");
}

}  // namespace

namespace serial {
double total_energy(const SocialGraph& graph, const Labeling& labels, const EnergyConfig& cfg) {
    check_labels(graph, labels);
    const uint32_t n = graph.node_count();
    return node_energy_sum_range(labels, cfg, 0, n) + link_energy_sum_range(graph, labels, cfg, 0, n);
}
}  // namespace serial

double total_energy(const SocialGraph& graph, const Labeling& labels, const EnergyConfig& cfg) {
    check_labels(graph, labels);
    const uint32_t n = graph.node_count();
    if (n < 4096) return serial::total_energy(graph, labels, cfg);

    // fixed chunk grid so the summation order is independent of thread count
    constexpr uint32_t kChunks = 256;
    double partial[kChunks];
#pragma omp parallel for schedule(static)
    for (uint32_t c = 0; c < kChunks; ++c) {
        uint32_t begin = static_cast<uint32_t>((static_cast<uint64_t>(n) * c) / kChunks);
        uint32_t end = static_cast<uint32_t>((static_cast<uint64_t>(n) * (c + 1)) / kChunks);
        partial[c] = node_energy_sum_range(labels, cfg, begin, end) +
                     link_energy_sum_range(graph, labels, cfg, begin, end);
    }
    double sum = 0.0;
    for (uint32_t c = 0; c < kChunks; ++c) sum += partial[c];
    return sum;
}

}  // namespace botscope
