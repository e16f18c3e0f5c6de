#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "botscope/energy.hpp"
#include "botscope/graph.hpp"

namespace botscope {

// Per-account retweets-per-target: total retweet weight to a target class
// divided by the number of distinct targets in that class. Absent when the
// account retweeted nobody in the class. Accounts with no out-edges omitted.
struct RetweetsPerTarget {
    uint32_t account;
    std::optional<double> to_bot;
    std::optional<double> to_human;
};

std::vector<RetweetsPerTarget> retweets_per_target(const SocialGraph& graph, const Labeling& labels);

struct KsResult {
    double d;  // sup |F1 - F2|
    double p;  // asymptotic two-sample p-value, clamped to [0,1]
};

KsResult ks_statistic(std::vector<double> sample1, std::vector<double> sample2);

struct RocPoint {
    double threshold;  // score at/above which we predict positive
    double fpr;
    double tpr;
};

struct RocCurve {
    std::vector<RocPoint> points;  // from (0,0) to (1,1)
    double auc;
};

// Threshold sweep over distinct scores, descending; tied scores share one
// threshold so the AUC equals P(score_pos > score_neg) + P(tie)/2.
RocCurve roc_auc(const std::vector<double>& scores, const std::vector<uint8_t>& truth);

}  // namespace botscope
