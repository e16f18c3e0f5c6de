#include "botscope/inference.hpp"

#include <cmath>
#include <string>

#include "botscope/errors.hpp"
#include "botscope/maxflow.hpp"

namespace botscope {

namespace {

constexpr double kCapTol = -1e-12;

struct CapCoeffs {
    double pair;      // (l10 + l01 - l00 - l11) / 2
    double src_out;   // (2*l00 + l01 - l10) / 4
    double src_in;    // (2*l00 + l10 - l01) / 4
    double sink_out;  // (2*l11 + l10 - l01) / 4
    double sink_in;   // (2*l11 + l01 - l10) / 4
};

CapCoeffs coeffs(const LambdaParams& l) {
    return {(l.l10 + l.l01 - l.l00 - l.l11) / 2.0,
            (2 * l.l00 + l.l01 - l.l10) / 4.0,
            (2 * l.l00 + l.l10 - l.l01) / 4.0,
            (2 * l.l11 + l.l10 - l.l01) / 4.0,
            (2 * l.l11 + l.l01 - l.l10) / 4.0};
}

void build_node_range(const SocialGraph& g, const EnergyConfig& cfg, const CapCoeffs& cc,
                      EnergyGraph& eg, uint32_t begin, uint32_t end) {
    for (uint32_t i = begin; i < end; ++i) {
        double zi_out = g.out_strength(i);
        double src = node_energy(cfg, i, 0);
        double sink = node_energy(cfg, i, 1);
        auto out_nbrs = g.out_neighbors(i);
        auto out_ws = g.out_weights(i);
        uint64_t base = eg.pair_offsets[i];
        for (size_t k = 0; k < out_nbrs.size(); ++k) {
            double p = psi(out_ws[k], zi_out, g.in_strength(out_nbrs[k]), cfg);
            eg.pair_dst[base + k] = out_nbrs[k];
            eg.pair_cap[base + k] = p * cc.pair;
            src += p * cc.src_out;
            sink += p * cc.sink_out;
        }
        auto in_nbrs = g.in_neighbors(i);
        auto in_ws = g.in_weights(i);
        double zi_in = g.in_strength(i);
        for (size_t k = 0; k < in_nbrs.size(); ++k) {
            double p = psi(in_ws[k], g.out_strength(in_nbrs[k]), zi_in, cfg);
            src += p * cc.src_in;
            sink += p * cc.sink_in;
        }
        eg.source_cap[i] = src;
        eg.sink_cap[i] = sink;
    }
}

// capacities must be non-negative for any feasible lambda; tiny negatives are rounding
void validate_and_clamp(EnergyGraph& eg) {
    auto clamp = [](std::vector<double>& caps) {
        for (size_t i = 0; i < caps.size(); ++i) {
            if (caps[i] < kCapTol)
                throw infeasibility_error("negative capacity " + std::to_string(caps[i]) +
                                          " in energy graph (entry " + std::to_string(i) + ")");
            if (caps[i] < 0) caps[i] = 0.0;
        }
    };
    clamp(eg.source_cap);
    clamp(eg.sink_cap);
    clamp(eg.pair_cap);
}

EnergyGraph prepare(const SocialGraph& graph, const EnergyConfig& cfg) {
    if (graph.role() != EdgeRole::Retweet)
        throw invalid_parameter_error("energy graph requires a retweet-role graph");
    cfg.validate(graph.node_count());
    EnergyGraph eg;
    eg.n = graph.node_count();
    eg.source_cap.resize(eg.n);
    eg.sink_cap.resize(eg.n);
    eg.pair_offsets.resize(eg.n + 1);
    eg.pair_offsets[0] = 0;
    for (uint32_t i = 0; i < eg.n; ++i)
        eg.pair_offsets[i + 1] = eg.pair_offsets[i] + graph.out_neighbors(i).size();
    eg.pair_dst.resize(graph.edge_count());
    eg.pair_cap.resize(graph.edge_count());
    return eg;
}

}  // namespace

namespace serial {
EnergyGraph build_energy_graph(const SocialGraph& graph, const EnergyConfig& cfg) {
    EnergyGraph eg = prepare(graph, cfg);
    build_node_range(graph, cfg, coeffs(cfg.lambda), eg, 0, eg.n);
    validate_and_clamp(eg);
    return eg;
}
}  // namespace serial

EnergyGraph build_energy_graph(const SocialGraph& graph, const EnergyConfig& cfg) {
    EnergyGraph eg = prepare(graph, cfg);
    const CapCoeffs cc = coeffs(cfg.lambda);
    const uint32_t n = eg.n;
    if (n < 4096) {
        build_node_range(graph, cfg, cc, eg, 0, n);
    } else {
#pragma omp parallel for schedule(static)
        for (uint32_t i = 0; i < n; ++i) build_node_range(graph, cfg, cc, eg, i, i + 1);
    }
    validate_and_clamp(eg);
    return eg;
}

double EnergyGraph::cut_weight(const Labeling& labels) const {
    double w = 0.0;
    for (uint32_t i = 0; i < n; ++i) {
        w += labels[i] ? sink_cap[i] : source_cap[i];
        for (uint64_t k = pair_offsets[i]; k < pair_offsets[i + 1]; ++k)
            if (labels[i] != labels[pair_dst[k]]) w += pair_cap[k];
    }
    return w;
}

CutResult min_cut_labels(const EnergyGraph& eg) {
    const uint32_t s = eg.n;
    const uint32_t t = eg.n + 1;
    DinicMaxFlow flow(eg.n + 2);
    for (uint32_t i = 0; i < eg.n; ++i) {
        if (eg.source_cap[i] > 0) flow.add_arc_pair(s, i, eg.source_cap[i], 0.0);
        if (eg.sink_cap[i] > 0) flow.add_arc_pair(i, t, eg.sink_cap[i], 0.0);
    }
    for (uint32_t i = 0; i < eg.n; ++i)
        for (uint64_t k = eg.pair_offsets[i]; k < eg.pair_offsets[i + 1]; ++k)
            if (eg.pair_cap[k] > 0) flow.add_arc_pair(i, eg.pair_dst[k], eg.pair_cap[k], eg.pair_cap[k]);

    CutResult res;
    res.flow_stats.flow_value = flow.solve(s, t);
    res.flow_stats.phases = flow.phases();
    res.flow_stats.augmentations = flow.augmentations();
    const auto& reach = flow.source_side();
    res.labels.resize(eg.n);
    for (uint32_t i = 0; i < eg.n; ++i) res.labels[i] = reach[i] ? 1 : 0;
    res.cut_value = eg.cut_weight(res.labels);
    res.min_energy = res.cut_value - eg.constant_offset;
    return res;
}

namespace {

double flip_delta(const SocialGraph& g, const Labeling& labels, const EnergyConfig& cfg, uint32_t i) {
    double delta = node_energy(cfg, i, 1) - node_energy(cfg, i, 0);
    const LambdaParams& l = cfg.lambda;
    double zi_out = g.out_strength(i);
    auto out_nbrs = g.out_neighbors(i);
    auto out_ws = g.out_weights(i);
    for (size_t k = 0; k < out_nbrs.size(); ++k) {
        uint32_t j = out_nbrs[k];
        double p = psi(out_ws[k], zi_out, g.in_strength(j), cfg);
        delta += p * (l.coeff(1, labels[j]) - l.coeff(0, labels[j]));
    }
    double zi_in = g.in_strength(i);
    auto in_nbrs = g.in_neighbors(i);
    auto in_ws = g.in_weights(i);
    for (size_t k = 0; k < in_nbrs.size(); ++k) {
        uint32_t j = in_nbrs[k];
        double p = psi(in_ws[k], g.out_strength(j), zi_in, cfg);
        delta += p * (l.coeff(labels[j], 1) - l.coeff(labels[j], 0));
    }
    return delta;
}

double sigmoid_neg(double delta) {
    // 1/(1+exp(delta)) without overflow
    if (delta >= 0) {
        double e = std::exp(-delta);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(delta));
}

}  // namespace

namespace serial {
std::vector<double> conditional_bot_probability(const SocialGraph& graph, const Labeling& labels,
                                                const EnergyConfig& cfg) {
    if (labels.size() != graph.node_count())
        throw invalid_parameter_error("labeling size does not match graph node count");
    cfg.validate(graph.node_count());
    std::vector<double> prob(graph.node_count());
    for (uint32_t i = 0; i < graph.node_count(); ++i)
        prob[i] = sigmoid_neg(flip_delta(graph, labels, cfg, i));
    return prob;
}
}  // namespace serial

std::vector<double> conditional_bot_probability(const SocialGraph& graph, const Labeling& labels,
                                                const EnergyConfig& cfg) {
    if (labels.size() != graph.node_count())
        throw invalid_parameter_error("labeling size does not match graph node count");
    cfg.validate(graph.node_count());
    const uint32_t n = graph.node_count();
    std::vector<double> prob(n);
#pragma omp parallel for schedule(static) if (n >= 4096)
    for (uint32_t i = 0; i < n; ++i) prob[i] = sigmoid_neg(flip_delta(graph, labels, cfg, i));
    return prob;
}

}  // namespace botscope
