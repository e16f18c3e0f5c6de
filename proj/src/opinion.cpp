#include "botscope/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "botscope/errors.hpp"

namespace botscope {

void OpinionState::validate() const {
    if (!graph) throw invalid_parameter_error("opinion state: no graph");
    if (graph->role() != EdgeRole::Follower)
        throw invalid_parameter_error("opinion state requires a follower-role graph");
    const uint32_t n = graph->node_count();
    if (stubborn.size() != n || opinion.size() != n || rate.size() != n)
        throw invalid_parameter_error("opinion state: vector sizes do not match graph");
    for (uint32_t i = 0; i < n; ++i) {
        if (rate[i] < 0) throw invalid_parameter_error("opinion state: negative rate");
        if (stubborn[i] && !(opinion[i] >= 0.0 && opinion[i] <= 1.0))
            throw invalid_parameter_error("opinion state: stubborn opinion outside [0,1] for user " +
                                          graph->id(i));
    }
}

double EquilibriumReport::mean_nonstubborn() const {
    double sum = 0;
    size_t count = 0;
    for (size_t i = 0; i < solvable.size(); ++i) {
        if (solvable[i]) {
            sum += theta[i];
            ++count;
        }
    }
    return count ? sum / static_cast<double>(count) : std::numeric_limits<double>::quiet_NaN();
}

size_t EquilibriumReport::solvable_count() const {
    size_t count = 0;
    for (uint8_t s : solvable) count += s;
    return count;
}

namespace {

// Restricted system over solvable nodes: theta_i = (b_i + sum r_j theta_j) / d_i
// with stubborn friends folded into b_i and unreachable friends dropped.
struct RestrictedSystem {
    std::vector<uint32_t> nodes;  // solvable node ids, ascending
    std::vector<double> bias;     // b_i, per solvable node
    std::vector<double> denom;    // d_i > 0
    std::vector<uint64_t> offsets;
    std::vector<uint32_t> friend_slot;  // positions into nodes/theta arrays
    std::vector<double> friend_rate;
};

void find_reachable(const OpinionState& st, std::vector<uint8_t>& reached) {
    const SocialGraph& g = *st.graph;
    const uint32_t n = g.node_count();
    reached.assign(n, 0);
    std::vector<uint32_t> queue;
    for (uint32_t i = 0; i < n; ++i) {
        if (st.stubborn[i] && st.rate[i] > 0) {
            // followers of an emitting stubborn node are grounded
            for (uint32_t k : g.out_neighbors(i)) {
                if (!st.stubborn[k] && !reached[k]) {
                    reached[k] = 1;
                    queue.push_back(k);
                }
            }
        }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        uint32_t v = queue[qi];
        if (st.rate[v] <= 0) continue;  // absorbs but does not emit
        for (uint32_t k : g.out_neighbors(v)) {
            if (!st.stubborn[k] && !reached[k]) {
                reached[k] = 1;
                queue.push_back(k);
            }
        }
    }
}

RestrictedSystem build_system(const OpinionState& st, std::vector<uint8_t>& solvable,
                              std::vector<uint32_t>& unreachable) {
    const SocialGraph& g = *st.graph;
    const uint32_t n = g.node_count();
    find_reachable(st, solvable);
    unreachable.clear();
    for (uint32_t i = 0; i < n; ++i) {
        if (!st.stubborn[i] && !solvable[i]) unreachable.push_back(i);
    }

    RestrictedSystem sys;
    std::vector<uint32_t> slot_of(n, UINT32_MAX);
    for (uint32_t i = 0; i < n; ++i) {
        if (solvable[i]) {
            slot_of[i] = static_cast<uint32_t>(sys.nodes.size());
            sys.nodes.push_back(i);
        }
    }
    sys.offsets.push_back(0);
    for (uint32_t i : sys.nodes) {
        double b = 0, d = 0;
        auto friends = g.in_neighbors(i);
        for (uint32_t j : friends) {
            if (st.rate[j] <= 0) continue;
            if (st.stubborn[j]) {
                b += st.rate[j] * st.opinion[j];
                d += st.rate[j];
            } else if (slot_of[j] != UINT32_MAX) {
                sys.friend_slot.push_back(slot_of[j]);
                sys.friend_rate.push_back(st.rate[j]);
                d += st.rate[j];
            }
            // unreachable friends carry no determined opinion: dropped
        }
        sys.bias.push_back(b);
        sys.denom.push_back(d);
        sys.offsets.push_back(sys.friend_slot.size());
    }
    return sys;
}

template <bool Parallel>
EquilibriumReport solve_impl(const OpinionState& state, const SolverOptions& opts) {
    state.validate();
    if (!(opts.tol > 0)) throw invalid_parameter_error("solver: tol must be > 0");
    if (!(opts.damping > 0 && opts.damping <= 1))
        throw invalid_parameter_error("solver: damping must be in (0,1]");

    EquilibriumReport report;
    const uint32_t n = state.node_count();
    RestrictedSystem sys = build_system(state, report.solvable, report.unreachable);
    const size_t m = sys.nodes.size();

    std::vector<double> theta(m, 0.5), next(m);
    report.converged = true;
    report.residual = 0.0;
    const double omega = opts.damping;

    for (uint64_t iter = 0; m > 0 && iter <= opts.max_iter; ++iter) {
        double defect = 0.0;
#pragma omp parallel for schedule(static) reduction(max : defect) if (Parallel && m >= 2048)
        for (size_t k = 0; k < m; ++k) {
            double acc = sys.bias[k];
            for (uint64_t e = sys.offsets[k]; e < sys.offsets[k + 1]; ++e)
                acc += sys.friend_rate[e] * theta[sys.friend_slot[e]];
            double value = acc / sys.denom[k];
            next[k] = value;
            defect = std::max(defect, std::abs(value - theta[k]));
        }
        report.residual = defect;
        report.iterations = iter;
        if (defect <= opts.tol) break;
        if (iter == opts.max_iter) {
            report.converged = false;
            break;
        }
        if (omega == 1.0) {
            theta.swap(next);
        } else {
            for (size_t k = 0; k < m; ++k) theta[k] += omega * (next[k] - theta[k]);
        }
    }

    report.theta.assign(n, std::numeric_limits<double>::quiet_NaN());
    for (uint32_t i = 0; i < n; ++i)
        if (state.stubborn[i]) report.theta[i] = state.opinion[i];
    for (size_t k = 0; k < m; ++k) report.theta[sys.nodes[k]] = theta[k];

    if (!report.converged)
        throw equilibrium_not_converged(
            "equilibrium solver did not converge: residual " + std::to_string(report.residual) +
                " after " + std::to_string(report.iterations) + " iterations (tol " +
                std::to_string(opts.tol) + ")",
            std::move(report));
    return report;
}

}  // namespace

EquilibriumReport solve_equilibrium(const OpinionState& state, const SolverOptions& opts) {
    return solve_impl<true>(state, opts);
}

namespace serial {
EquilibriumReport solve_equilibrium(const OpinionState& state, const SolverOptions& opts) {
    return solve_impl<false>(state, opts);
}
}  // namespace serial

namespace {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double gaussian(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace

SimulationResult simulate(const OpinionState& state, const SimulationOptions& opts) {
    state.validate();
    const SocialGraph& g = *state.graph;
    const uint32_t n = g.node_count();

    std::vector<double> cum_rate;
    std::vector<uint32_t> poster;
    cum_rate.reserve(n);
    double total = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (state.rate[i] > 0) {
            total += state.rate[i];
            cum_rate.push_back(total);
            poster.push_back(i);
        }
    }
    if (poster.empty()) throw invalid_parameter_error("simulate: no node has a positive rate");

    SimulationResult res;
    res.final_opinion.resize(n);
    std::vector<uint64_t> updates(n, 0);
    for (uint32_t i = 0; i < n; ++i)
        res.final_opinion[i] = state.stubborn[i] ? state.opinion[i] : opts.initial_opinion;

    size_t n_free = 0;
    for (uint32_t i = 0; i < n; ++i) n_free += !state.stubborn[i];
    auto mean_free = [&]() {
        if (n_free == 0) return std::numeric_limits<double>::quiet_NaN();
        double s = 0;
        for (uint32_t i = 0; i < n; ++i)
            if (!state.stubborn[i]) s += res.final_opinion[i];
        return s / static_cast<double>(n_free);
    };

    std::mt19937_64 rng(opts.seed);
    for (uint64_t ev = 1; ev <= opts.events; ++ev) {
        double u = uniform01(rng) * total;
        size_t idx = std::upper_bound(cum_rate.begin(), cum_rate.end(), u) - cum_rate.begin();
        if (idx >= poster.size()) idx = poster.size() - 1;
        uint32_t i = poster[idx];
        double x = res.final_opinion[i];
        if (opts.noise_sigma > 0)
            x = std::clamp(x + opts.noise_sigma * gaussian(rng), 0.0, 1.0);
        ++res.posts;
        for (uint32_t f : g.out_neighbors(i)) {
            if (state.stubborn[f]) continue;  // weight identically zero
            double w = opts.schedule(updates[f]);
            res.final_opinion[f] += w * (x - res.final_opinion[f]);
            ++updates[f];
        }
        if (opts.record_every > 0 && ev % opts.record_every == 0)
            res.trajectory.emplace_back(ev, mean_free());
    }
    res.trajectory.emplace_back(opts.events, mean_free());
    return res;
}

}  // namespace botscope
