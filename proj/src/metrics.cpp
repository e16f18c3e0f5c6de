#include "botscope/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "botscope/errors.hpp"

namespace botscope {

std::vector<RetweetsPerTarget> retweets_per_target(const SocialGraph& graph, const Labeling& labels) {
    if (labels.size() != graph.node_count())
        throw invalid_parameter_error("labeling size does not match graph node count");
    std::vector<RetweetsPerTarget> table;
    for (uint32_t i = 0; i < graph.node_count(); ++i) {
        auto nbrs = graph.out_neighbors(i);
        if (nbrs.empty()) continue;
        auto ws = graph.out_weights(i);
        double w_bot = 0, w_human = 0;
        size_t n_bot = 0, n_human = 0;
        for (size_t k = 0; k < nbrs.size(); ++k) {
            if (labels[nbrs[k]]) {
                w_bot += ws[k];
                ++n_bot;
            } else {
                w_human += ws[k];
                ++n_human;
            }
        }
        RetweetsPerTarget row{i, std::nullopt, std::nullopt};
        if (n_bot) row.to_bot = w_bot / static_cast<double>(n_bot);
        if (n_human) row.to_human = w_human / static_cast<double>(n_human);
        table.push_back(row);
    }
    return table;
}

namespace {

// Q(lambda) = 2 * sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)
double kolmogorov_tail(double lambda) {
    if (lambda <= 0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 101; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        if (term < 1e-12) break;
        sum += sign * term;
        sign = -sign;
    }
    double p = 2.0 * sum;
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace

KsResult ks_statistic(std::vector<double> sample1, std::vector<double> sample2) {
    if (sample1.empty() || sample2.empty())
        throw invalid_parameter_error("ks_statistic: samples must be non-empty");
    std::sort(sample1.begin(), sample1.end());
    std::sort(sample2.begin(), sample2.end());
    const double n1 = static_cast<double>(sample1.size());
    const double n2 = static_cast<double>(sample2.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sample1.size() && j < sample2.size()) {
        double x = std::min(sample1[i], sample2[j]);
        while (i < sample1.size() && sample1[i] <= x) ++i;
        while (j < sample2.size() && sample2[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    double ne = n1 * n2 / (n1 + n2);
    double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    return {d, kolmogorov_tail(lambda)};
}

RocCurve roc_auc(const std::vector<double>& scores, const std::vector<uint8_t>& truth) {
    if (scores.size() != truth.size())
        throw invalid_parameter_error("roc_auc: scores/truth size mismatch");
    size_t pos = 0, neg = 0;
    for (uint8_t t : truth) (t ? pos : neg)++;
    if (pos == 0 || neg == 0)
        throw invalid_parameter_error("roc_auc: need at least one positive and one negative label");

    std::vector<size_t> order(scores.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    curve.auc = 0.0;
    size_t tp = 0, fp = 0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    size_t k = 0;
    while (k < order.size()) {
        double thr = scores[order[k]];
        // consume the whole tie group at this threshold
        while (k < order.size() && scores[order[k]] == thr) {
            (truth[order[k]] ? tp : fp)++;
            ++k;
        }
        double fpr = static_cast<double>(fp) / static_cast<double>(neg);
        double tpr = static_cast<double>(tp) / static_cast<double>(pos);
        curve.auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
        curve.points.push_back({thr, fpr, tpr});
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    return curve;
}

}  // namespace botscope
