#include "botscope/ghic.hpp"

#include <cmath>

#include "botscope/errors.hpp"

namespace botscope {

CentralityResult ghic(const OpinionState& base, const std::vector<uint32_t>& targets,
                      const GhicOptions& opts) {
    base.validate();
    const uint32_t n = base.node_count();
    std::vector<uint8_t> in_s(n, 0);
    for (uint32_t t : targets) {
        if (t >= n) throw invalid_parameter_error("ghic: target node out of range");
        in_s[t] = 1;
    }

    EquilibriumReport with_s = solve_equilibrium(base, opts.solver);

    EquilibriumReport without_s;
    std::vector<int64_t> old_to_new;
    if (opts.mode == RemovalMode::Silence) {
        OpinionState silenced = base;
        for (uint32_t t : targets) silenced.rate[t] = 0.0;
        without_s = solve_equilibrium(silenced, opts.solver);
        old_to_new.resize(n);
        for (uint32_t i = 0; i < n; ++i) old_to_new[i] = i;
    } else {
        OpinionState reduced;
        auto sub = std::make_shared<SocialGraph>(base.graph->without_nodes(in_s, old_to_new));
        reduced.graph = sub;
        reduced.stubborn.resize(sub->node_count());
        reduced.opinion.resize(sub->node_count());
        reduced.rate.resize(sub->node_count());
        for (uint32_t i = 0; i < n; ++i) {
            if (old_to_new[i] < 0) continue;
            uint32_t j = static_cast<uint32_t>(old_to_new[i]);
            reduced.stubborn[j] = base.stubborn[i];
            reduced.opinion[j] = base.opinion[i];
            reduced.rate[j] = base.rate[i];
        }
        without_s = solve_equilibrium(reduced, opts.solver);
    }

    CentralityResult res{0.0, 0.0, 0.0, 0, 0};
    double sum_with = 0, sum_without = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (base.stubborn[i] || in_s[i]) continue;
        bool a = with_s.solvable[i];
        int64_t j = old_to_new[i];
        bool b = j >= 0 && without_s.solvable[static_cast<uint32_t>(j)];
        if (a && b) {
            sum_with += with_s.theta[i];
            sum_without += without_s.theta[static_cast<uint32_t>(j)];
            ++res.evaluated;
        } else {
            ++res.dropped;
        }
    }
    if (res.evaluated == 0)
        throw infeasibility_error("ghic: no non-stubborn node is solvable in both scenarios");
    res.mean_with = sum_with / static_cast<double>(res.evaluated);
    res.mean_without = sum_without / static_cast<double>(res.evaluated);
    res.delta = res.mean_with - res.mean_without;
    return res;
}

double harmonic_influence_centrality(const OpinionState& base, uint32_t node,
                                     const SolverOptions& opts) {
    base.validate();
    if (node >= base.node_count() || !base.stubborn[node])
        throw invalid_parameter_error("harmonic influence centrality: node must be stubborn");
    OpinionState probe = base;
    for (uint32_t i = 0; i < probe.node_count(); ++i)
        if (probe.stubborn[i]) probe.opinion[i] = 0.0;
    probe.opinion[node] = 1.0;
    EquilibriumReport report = solve_equilibrium(probe, opts);
    return report.mean_nonstubborn();
}

}  // namespace botscope
