// botscope: bot detection on retweet graphs via exact MAP inference (min-cut
// on an Ising energy) plus opinion-equilibrium impact assessment.
//
// Subcommands: detect, assess, sweep, eval, behavior, synth, equilibrium,
// simulate. All outputs are CSV/JSON; see README for the pipeline.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "botscope/csv.hpp"
#include "botscope/energy.hpp"
#include "botscope/errors.hpp"
#include "botscope/ghic.hpp"
#include "botscope/graph.hpp"
#include "botscope/inference.hpp"
#include "botscope/metrics.hpp"
#include "botscope/opinion.hpp"
#include "botscope/stubborn.hpp"
#include "botscope/synth.hpp"

using json = nlohmann::ordered_json;
using namespace botscope;

namespace {

std::string fmt(double v, int precision = 12) {
    char buf[40];
    snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

char resolve_delimiter(const std::string& name) {
    if (name == "comma") return ',';
    if (name == "tab") return '\t';
    throw invalid_parameter_error("unknown delimiter '" + name + "' (use comma or tab)");
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
}

std::unordered_map<std::string, double> read_value_csv(const std::string& path, char delim,
                                                       const char* what) {
    std::unordered_map<std::string, double> values;
    csv::for_each_row(path, delim, false,
                      [&](size_t lineno, const std::vector<std::string_view>& fields) {
                          if (fields.size() != 2)
                              throw io_error(path + ":" + std::to_string(lineno) + ": expected user_id," +
                                             what);
                          double v;
                          if (!csv::parse_double(fields[1], v))
                              throw io_error(path + ":" + std::to_string(lineno) + ": bad " + what);
                          values[std::string(csv::trim(fields[0]))] = v;
                      });
    return values;
}

std::unordered_map<std::string, uint8_t> read_label_csv(const std::string& path, char delim) {
    std::unordered_map<std::string, uint8_t> labels;
    csv::for_each_row(path, delim, false,
                      [&](size_t lineno, const std::vector<std::string_view>& fields) {
                          if (fields.size() != 2)
                              throw io_error(path + ":" + std::to_string(lineno) +
                                             ": expected user_id,label");
                          auto v = csv::trim(fields[1]);
                          uint8_t lab;
                          if (v == "bot" || v == "1")
                              lab = 1;
                          else if (v == "human" || v == "0")
                              lab = 0;
                          else
                              throw io_error(path + ":" + std::to_string(lineno) + ": bad label '" +
                                             std::string(v) + "' (use bot/human/1/0)");
                          labels[std::string(csv::trim(fields[0]))] = lab;
                      });
    return labels;
}

// ---------------------------------------------------------------- detect --

struct DetectArgs {
    std::string graph_path;
    std::string delimiter = "comma";
    bool header = false;
    std::string lambda = "centroid";
    double gamma = 1.0;
    double alpha_out = 0.0, alpha_in = 0.0;
    double alpha_percentile = 99.0;
    std::string node_energy = "zero";
    std::string priors_path;
    uint64_t seed = 1;
    std::string labels_out = "labels.csv";
    std::string probs_out = "probabilities.csv";
    std::string summary_out = "detect_summary.json";
};

LambdaParams parse_lambda(const std::string& text) {
    if (text == "centroid") return lambda_centroid();
    std::vector<std::string_view> parts;
    csv::split(text, ',', parts);
    if (parts.size() != 4)
        throw invalid_parameter_error("--lambda expects 'centroid' or l10,l00,l11,l01");
    double v[4];
    for (int i = 0; i < 4; ++i)
        if (!csv::parse_double(parts[i], v[i]))
            throw invalid_parameter_error("--lambda: bad number '" + std::string(parts[i]) + "'");
    return LambdaParams(v[0], v[1], v[2], v[3]);
}

int run_detect(const DetectArgs& args) {
    Timer timer;
    char delim = resolve_delimiter(args.delimiter);
    IngestReport ingest;
    SocialGraph graph =
        ingest_edge_list(args.graph_path, EdgeRole::Retweet, {delim, args.header}, &ingest);

    EnergyConfig cfg;
    cfg.lambda = parse_lambda(args.lambda);
    cfg.gamma = args.gamma;
    bool alpha_explicit = args.alpha_out > 0 && args.alpha_in > 0;
    if (alpha_explicit) {
        cfg.alpha_out = args.alpha_out;
        cfg.alpha_in = args.alpha_in;
    } else if (graph.node_count() > 0) {
        cfg.alpha_out = degree_percentile(graph, StrengthKind::Out, args.alpha_percentile);
        cfg.alpha_in = degree_percentile(graph, StrengthKind::In, args.alpha_percentile);
        if (cfg.alpha_out <= 0 || cfg.alpha_in <= 0)
            throw invalid_parameter_error(
                "resolved alpha is zero at percentile " + fmt(args.alpha_percentile) +
                "; pass --alpha-out/--alpha-in explicitly");
    }

    if (args.node_energy == "zero") {
        cfg.node_energy_mode = NodeEnergyMode::Zero;
    } else if (args.node_energy == "prior") {
        if (args.priors_path.empty())
            throw invalid_parameter_error("--node-energy prior requires --priors");
        auto priors = read_value_csv(args.priors_path, delim, "pi");
        cfg.node_energy_mode = NodeEnergyMode::Prior;
        cfg.prior.resize(graph.node_count());
        for (uint32_t i = 0; i < graph.node_count(); ++i) {
            auto it = priors.find(graph.id(i));
            if (it == priors.end())
                throw invalid_parameter_error("no prior score for user " + graph.id(i));
            if (it->second < 0 || it->second > 1)
                throw invalid_parameter_error("prior outside [0,1] for user " + graph.id(i));
            cfg.prior[i] = it->second;
        }
    } else if (args.node_energy == "uniform") {
        cfg.node_energy_mode = NodeEnergyMode::Prior;
        cfg.prior.resize(graph.node_count());
        std::mt19937_64 rng(args.seed);
        for (auto& p : cfg.prior) p = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    } else {
        throw invalid_parameter_error("--node-energy must be zero, prior or uniform");
    }

    CutResult cut;
    std::vector<double> prob;
    if (graph.node_count() > 0) {
        EnergyGraph eg = build_energy_graph(graph, cfg);
        cut = min_cut_labels(eg);
        prob = conditional_bot_probability(graph, cut.labels, cfg);
    }

    size_t bots = 0;
    {
        csv::Writer labels(args.labels_out);
        for (uint32_t i = 0; i < graph.node_count(); ++i) {
            labels.row(graph.id(i), cut.labels[i] ? "bot" : "human");
            bots += cut.labels[i];
        }
        labels.close();
    }
    {
        csv::Writer probs(args.probs_out);
        for (uint32_t i = 0; i < graph.node_count(); ++i) probs.row(graph.id(i), fmt(prob[i]));
        probs.close();
    }

    json summary;
    summary["parameters"] = {
        {"lambda", {{"l10", cfg.lambda.l10}, {"l00", cfg.lambda.l00}, {"l11", cfg.lambda.l11},
                    {"l01", cfg.lambda.l01}, {"mode", args.lambda == "centroid" ? "centroid" : "explicit"}}},
        {"gamma", cfg.gamma},
        {"alpha_out", cfg.alpha_out},
        {"alpha_in", cfg.alpha_in},
        {"alpha_source", alpha_explicit ? "explicit" : "percentile"},
        {"alpha_percentile", alpha_explicit ? json() : json(args.alpha_percentile)},
        {"node_energy", args.node_energy},
        {"seed", args.seed}};
    summary["graph"] = {{"nodes", ingest.nodes},
                        {"edges", ingest.edges},
                        {"rows_read", ingest.rows_read},
                        {"self_loops_dropped", ingest.self_loops_dropped},
                        {"parallel_merged", ingest.parallel_merged}};
    summary["result"] = {{"bot_count", bots},
                         {"human_count", graph.node_count() - bots},
                         {"cut_value", cut.cut_value},
                         {"min_energy", cut.min_energy},
                         {"constant_offset", 0.0},
                         {"flow_phases", cut.flow_stats.phases},
                         {"flow_augmentations", cut.flow_stats.augmentations}};
    summary["timing"] = {{"elapsed_ms", timer.elapsed_ms()}};
    write_json(args.summary_out, summary);
    return 0;
}

// ------------------------------------------------------------------ eval --

struct EvalArgs {
    std::string scores_path;
    std::string truth_path;
    std::string delimiter = "comma";
    std::string roc_out = "roc.csv";
    std::string summary_out = "eval_summary.json";
};

int run_eval(const EvalArgs& args) {
    char delim = resolve_delimiter(args.delimiter);
    auto scores = read_value_csv(args.scores_path, delim, "probability");
    auto truth = read_label_csv(args.truth_path, delim);

    std::vector<std::string> users;
    users.reserve(truth.size());
    for (const auto& [user, _] : truth) users.push_back(user);
    std::sort(users.begin(), users.end());

    std::vector<double> s;
    std::vector<uint8_t> t;
    for (const auto& user : users) {
        auto it = scores.find(user);
        if (it == scores.end())
            throw invalid_parameter_error("no score for labeled user " + user);
        s.push_back(it->second);
        t.push_back(truth[user]);
    }
    RocCurve curve = roc_auc(s, t);

    csv::Writer roc(args.roc_out);
    roc.row("threshold", "fpr", "tpr");
    for (const auto& p : curve.points)
        roc.row(std::isinf(p.threshold) ? "inf" : fmt(p.threshold), fmt(p.fpr), fmt(p.tpr));
    roc.close();

    json summary;
    summary["auc"] = curve.auc;
    summary["labeled_users"] = users.size();
    summary["positives"] = static_cast<size_t>(std::count(t.begin(), t.end(), 1));
    summary["negatives"] = static_cast<size_t>(std::count(t.begin(), t.end(), 0));
    write_json(args.summary_out, summary);
    std::cout << "auc " << fmt(curve.auc, 6) << "\n";
    return 0;
}

// -------------------------------------------------------------- behavior --

struct BehaviorArgs {
    std::string graph_path;
    std::string labels_path;
    std::string delimiter = "comma";
    bool header = false;
    std::string rpt_out = "retweets_per_target.csv";
    std::string summary_out = "behavior_summary.json";
};

int run_behavior(const BehaviorArgs& args) {
    char delim = resolve_delimiter(args.delimiter);
    SocialGraph graph =
        ingest_edge_list(args.graph_path, EdgeRole::Retweet, {delim, args.header});
    auto label_map = read_label_csv(args.labels_path, delim);
    Labeling labels(graph.node_count(), 0);
    for (uint32_t i = 0; i < graph.node_count(); ++i) {
        auto it = label_map.find(graph.id(i));
        if (it == label_map.end())
            throw invalid_parameter_error("no label for user " + graph.id(i));
        labels[i] = it->second;
    }

    auto table = retweets_per_target(graph, labels);
    csv::Writer rpt(args.rpt_out);
    rpt.row("account", "account_label", "rpt_to_bot", "rpt_to_human");
    // samples: [source class][target class]
    std::vector<double> samples[2][2];
    for (const auto& row : table) {
        rpt.row(graph.id(row.account), labels[row.account] ? "bot" : "human",
                row.to_bot ? fmt(*row.to_bot) : "", row.to_human ? fmt(*row.to_human) : "");
        if (row.to_bot) samples[labels[row.account]][1].push_back(*row.to_bot);
        if (row.to_human) samples[labels[row.account]][0].push_back(*row.to_human);
    }
    rpt.close();

    auto mean_of = [](const std::vector<double>& v) -> json {
        if (v.empty()) return nullptr;
        double s = 0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    auto ks_of = [](const std::vector<double>& a, const std::vector<double>& b) -> json {
        if (a.empty() || b.empty()) return nullptr;
        KsResult ks = ks_statistic(a, b);
        return {{"d", ks.d}, {"p", ks.p}};
    };
    json summary;
    summary["mean_rpt"] = {{"bot_to_human", mean_of(samples[1][0])},
                           {"bot_to_bot", mean_of(samples[1][1])},
                           {"human_to_human", mean_of(samples[0][0])},
                           {"human_to_bot", mean_of(samples[0][1])}};
    summary["ks"] = {{"bot_targets_vs_human_targets_for_bots", ks_of(samples[1][1], samples[1][0])},
                     {"bot_targets_vs_human_targets_for_humans", ks_of(samples[0][1], samples[0][0])},
                     {"bot_to_human_vs_human_to_bot", ks_of(samples[1][0], samples[0][1])}};
    summary["accounts_with_out_edges"] = table.size();
    write_json(args.summary_out, summary);
    return 0;
}

// ----------------------------------------------------------------- synth --

struct SynthRetweetArgs {
    PlantedBotConfig cfg;
    std::string out_dir = ".";
};

int run_synth_retweet(const SynthRetweetArgs& args) {
    std::filesystem::create_directories(args.out_dir);
    PlantedGraph planted = generate_planted(args.cfg);
    std::string edges = args.out_dir + "/retweet_edges.csv";
    std::string truth = args.out_dir + "/truth_labels.csv";
    write_edge_list(planted.graph, edges);
    {
        csv::Writer w(truth);
        for (uint32_t i = 0; i < planted.graph.node_count(); ++i)
            w.row(planted.graph.id(i), planted.truth[i] ? "bot" : "human");
        w.close();
    }
    json summary = {{"nodes", planted.graph.node_count()},
                    {"edges", planted.graph.edge_count()},
                    {"humans", args.cfg.n_humans},
                    {"bots", args.cfg.n_bots},
                    {"seed", args.cfg.seed},
                    {"files", {{"edges", edges}, {"truth", truth}}}};
    write_json(args.out_dir + "/synth_summary.json", summary);
    return 0;
}

struct SynthOpinionArgs {
    OpinionNetworkConfig cfg;
    std::string dist = "polarized";
    std::string out_dir = ".";
};

int run_synth_opinion(SynthOpinionArgs args) {
    if (args.dist == "uniform")
        args.cfg.dist = OpinionDistribution::Uniform;
    else if (args.dist == "polarized")
        args.cfg.dist = OpinionDistribution::Polarized;
    else if (args.dist == "extreme")
        args.cfg.dist = OpinionDistribution::Extreme;
    else
        throw invalid_parameter_error("--dist must be uniform, polarized or extreme");
    std::filesystem::create_directories(args.out_dir);
    GeneratedOpinionNetwork net = generate_opinion_network(args.cfg);
    const SocialGraph& g = *net.state.graph;

    std::string edges = args.out_dir + "/follower_edges.csv";
    write_edge_list(g, edges);
    {
        csv::Writer w(args.out_dir + "/tweets.csv");
        for (uint32_t i = 0; i < g.node_count(); ++i) {
            auto count = static_cast<uint64_t>(net.state.rate[i]);
            for (uint64_t k = 0; k < count; ++k)
                w.row(g.id(i), fmt(net.planted_opinion[i]));
        }
        w.close();
    }
    {
        csv::Writer w(args.out_dir + "/stubborn.csv");
        for (uint32_t i = 0; i < g.node_count(); ++i)
            if (net.state.stubborn[i]) w.row(g.id(i), fmt(net.state.opinion[i]));
        w.close();
    }
    {
        csv::Writer w(args.out_dir + "/rates.csv");
        for (uint32_t i = 0; i < g.node_count(); ++i) w.row(g.id(i), fmt(net.state.rate[i]));
        w.close();
    }
    size_t stubborn_count = 0;
    for (uint8_t s : net.state.stubborn) stubborn_count += s;
    json summary = {{"nodes", g.node_count()},
                    {"edges", g.edge_count()},
                    {"stubborn", stubborn_count},
                    {"seed", args.cfg.seed},
                    {"repair", args.cfg.repair}};
    write_json(args.out_dir + "/synth_summary.json", summary);
    return 0;
}

// ----------------------------------------------------- equilibrium common --

struct StateFiles {
    std::string graph_path;
    std::string stubborn_path;
    std::string rates_path;
    std::string delimiter = "comma";
    bool header = false;
};

OpinionState load_state(const StateFiles& files, size_t* missing_stubborn = nullptr) {
    char delim = resolve_delimiter(files.delimiter);
    auto graph = std::make_shared<SocialGraph>(
        ingest_edge_list(files.graph_path, EdgeRole::Follower, {delim, files.header}));
    auto stub = read_value_csv(files.stubborn_path, delim, "opinion");
    auto rates = files.rates_path.empty()
                     ? std::unordered_map<std::string, double>{}
                     : read_value_csv(files.rates_path, delim, "rate");
    OpinionState state;
    state.graph = graph;
    const uint32_t n = graph->node_count();
    state.stubborn.assign(n, 0);
    state.opinion.assign(n, 0.0);
    state.rate.assign(n, files.rates_path.empty() ? 1.0 : 0.0);
    size_t placed = 0;
    for (uint32_t i = 0; i < n; ++i) {
        auto it = stub.find(graph->id(i));
        if (it != stub.end()) {
            state.stubborn[i] = 1;
            state.opinion[i] = it->second;
            ++placed;
        }
        auto rt = rates.find(graph->id(i));
        if (rt != rates.end()) state.rate[i] = rt->second;
    }
    if (missing_stubborn) *missing_stubborn = stub.size() - placed;
    return state;
}

void write_equilibrium_csv(const std::string& path, const OpinionState& state,
                           const EquilibriumReport& rep) {
    csv::Writer w(path);
    w.row("user_id", "opinion", "is_stubborn");
    const SocialGraph& g = *state.graph;
    for (uint32_t i = 0; i < g.node_count(); ++i) {
        bool has_value = state.stubborn[i] || rep.solvable[i];
        w.row(g.id(i), has_value ? fmt(rep.theta[i]) : "", state.stubborn[i] ? 1 : 0);
    }
    w.close();
}

json equilibrium_summary(const OpinionState& state, const EquilibriumReport& rep) {
    size_t stubborn_count = 0;
    double stubborn_mean = 0;
    for (uint32_t i = 0; i < state.node_count(); ++i) {
        if (state.stubborn[i]) {
            ++stubborn_count;
            stubborn_mean += state.opinion[i];
        }
    }
    return {{"nodes", state.node_count()},
            {"stubborn", stubborn_count},
            {"stubborn_mean", stubborn_count ? json(stubborn_mean / stubborn_count) : json()},
            {"nonstubborn_solved", rep.solvable_count()},
            {"nonstubborn_mean", rep.solvable_count() ? json(rep.mean_nonstubborn()) : json()},
            {"unreachable", rep.unreachable.size()},
            {"iterations", rep.iterations},
            {"residual", rep.residual}};
}

struct EquilibriumArgs {
    StateFiles files;
    double tol = 1e-10;
    uint64_t max_iter = 100000;
    double damping = 1.0;
    std::string out = "equilibrium.csv";
    std::string summary_out = "equilibrium_summary.json";
};

int run_equilibrium(const EquilibriumArgs& args) {
    OpinionState state = load_state(args.files);
    EquilibriumReport rep = solve_equilibrium(state, {args.tol, args.max_iter, args.damping});
    write_equilibrium_csv(args.out, state, rep);
    write_json(args.summary_out, equilibrium_summary(state, rep));
    return 0;
}

struct SimulateArgs {
    StateFiles files;
    SimulationOptions opts;
    std::string out = "simulated_opinions.csv";
    std::string trajectory_out = "trajectory.csv";
};

int run_simulate(const SimulateArgs& args) {
    OpinionState state = load_state(args.files);
    SimulationResult res = simulate(state, args.opts);
    {
        csv::Writer w(args.out);
        w.row("user_id", "opinion", "is_stubborn");
        for (uint32_t i = 0; i < state.node_count(); ++i)
            w.row(state.graph->id(i), fmt(res.final_opinion[i]), state.stubborn[i] ? 1 : 0);
        w.close();
    }
    {
        csv::Writer w(args.trajectory_out);
        w.row("event", "mean_nonstubborn_opinion");
        for (auto [ev, mean] : res.trajectory) w.row(ev, fmt(mean));
        w.close();
    }
    return 0;
}

// ---------------------------------------------------------------- assess --

struct AssessArgs {
    std::string graph_path;
    std::string tweets_path;
    std::string bot_labels_path;
    std::string bot_ids;  // comma-separated alternative to --bot-labels
    std::string profiles_path;
    std::string lexicon_path;
    std::string delimiter = "comma";
    bool header = false;
    double stubborn_lower = 0.1;
    double stubborn_upper = 0.9;
    double tol = 1e-10;
    uint64_t max_iter = 100000;
    double damping = 1.0;
    bool uniform_rates = false;
    std::string removal = "delete";
    std::string equilibrium_out = "equilibrium.csv";
    std::string summary_out = "assess_summary.json";
};

struct AssessInputs {
    std::shared_ptr<SocialGraph> graph;
    std::unordered_map<std::string, double> opinions;
    std::unordered_map<std::string, double> rates;
    std::unordered_set<std::string> bots;
    size_t bots_outside_graph = 0;
};

AssessInputs load_assess_inputs(const AssessArgs& args) {
    char delim = resolve_delimiter(args.delimiter);
    AssessInputs in;
    in.graph = std::make_shared<SocialGraph>(
        ingest_edge_list(args.graph_path, EdgeRole::Follower, {delim, args.header}));
    auto tweets = load_tweets_csv(args.tweets_path, delim);
    in.opinions = user_opinions(tweets);
    in.rates = assign_rates(tweets);
    if (!args.profiles_path.empty()) {
        if (args.lexicon_path.empty())
            throw invalid_parameter_error("--profiles requires --lexicon");
        auto profiles = load_profiles_csv(args.profiles_path, delim);
        auto by_phrase = label_by_profile_phrases(profiles, load_lexicon(args.lexicon_path));
        // profile labels only fill users with no scored tweets
        for (const auto& [user, op] : by_phrase) in.opinions.emplace(user, op);
    }
    if (args.bot_labels_path.empty() && args.bot_ids.empty())
        throw invalid_parameter_error("need --bot-labels or --bot-ids");
    std::vector<std::string> bot_users;
    if (!args.bot_labels_path.empty()) {
        for (const auto& [user, lab] : read_label_csv(args.bot_labels_path, delim))
            if (lab) bot_users.push_back(user);
    }
    if (!args.bot_ids.empty()) {
        std::vector<std::string_view> parts;
        csv::split(args.bot_ids, ',', parts);
        for (auto p : parts)
            if (!csv::trim(p).empty()) bot_users.emplace_back(csv::trim(p));
    }
    for (const auto& user : bot_users) {
        if (in.graph->find(user))
            in.bots.insert(user);
        else
            ++in.bots_outside_graph;
    }
    return in;
}

// Build the anchored state for one stubborn-interval choice. Bots are forced
// stubborn at their measured opinions.
OpinionState build_state(const AssessInputs& in, const StubbornConfig& cfg, bool uniform_rates) {
    StubbornAssignment assign = classify_stubborn(in.opinions, cfg, in.bots);
    const SocialGraph& g = *in.graph;
    OpinionState state;
    state.graph = in.graph;
    const uint32_t n = g.node_count();
    state.stubborn.assign(n, 0);
    state.opinion.assign(n, 0.0);
    state.rate.assign(n, 0.0);
    for (uint32_t i = 0; i < n; ++i) {
        auto it = assign.stubborn_opinion.find(g.id(i));
        if (it != assign.stubborn_opinion.end()) {
            state.stubborn[i] = 1;
            state.opinion[i] = it->second;
        }
        if (uniform_rates) {
            state.rate[i] = 1.0;
        } else {
            auto rt = in.rates.find(g.id(i));
            if (rt != in.rates.end()) state.rate[i] = rt->second;
        }
    }
    return state;
}

json assess_one(const AssessInputs& in, const StubbornConfig& cfg, const AssessArgs& args,
                bool uniform_rates, OpinionState* state_out, EquilibriumReport* rep_out) {
    OpinionState state = build_state(in, cfg, uniform_rates);
    std::vector<uint32_t> targets;
    for (const auto& user : in.bots)
        if (auto idx = in.graph->find(user)) targets.push_back(*idx);
    std::sort(targets.begin(), targets.end());

    GhicOptions gopts;
    gopts.solver = {args.tol, args.max_iter, args.damping};
    gopts.mode = args.removal == "silence" ? RemovalMode::Silence : RemovalMode::Delete;
    CentralityResult res = ghic(state, targets, gopts);

    EquilibriumReport rep = solve_equilibrium(state, gopts.solver);
    if (state_out) *state_out = state;
    if (rep_out) *rep_out = rep;

    size_t stubborn_count = 0;
    for (uint8_t s : state.stubborn) stubborn_count += s;
    return {{"delta", res.delta},
            {"mean_with", res.mean_with},
            {"mean_without", res.mean_without},
            {"evaluated", res.evaluated},
            {"dropped_count", res.dropped},
            {"bots_in_graph", targets.size()},
            {"stubborn_count", stubborn_count},
            {"unreachable", rep.unreachable.size()},
            {"residual", rep.residual}};
}

int run_assess(const AssessArgs& args) {
    if (args.removal != "delete" && args.removal != "silence")
        throw invalid_parameter_error("--removal must be delete or silence");
    Timer timer;
    AssessInputs in = load_assess_inputs(args);
    StubbornConfig cfg{args.stubborn_lower, args.stubborn_upper};
    cfg.validate();

    OpinionState state;
    EquilibriumReport rep;
    json summary;
    summary["intervals"] = {{"lower", {0.0, args.stubborn_lower}},
                            {"upper", {args.stubborn_upper, 1.0}}};
    summary["bots_outside_graph"] = in.bots_outside_graph;
    summary["actual_rates"] = assess_one(in, cfg, args, false, &state, &rep);
    if (args.uniform_rates) summary["uniform_rates"] = assess_one(in, cfg, args, true, nullptr, nullptr);
    summary["timing"] = {{"elapsed_ms", timer.elapsed_ms()}};

    write_equilibrium_csv(args.equilibrium_out, state, rep);
    write_json(args.summary_out, summary);
    std::cout << "delta " << summary["actual_rates"]["delta"].dump() << "\n";
    return 0;
}

// ----------------------------------------------------------------- sweep --

struct SweepArgs {
    AssessArgs assess;
    std::vector<std::string> intervals;
    std::string out = "sweep.csv";
};

int run_sweep(const SweepArgs& args) {
    AssessInputs in = load_assess_inputs(args.assess);
    csv::Writer w(args.out);
    w.row("lower", "upper", "stubborn_count", "mean_with", "mean_without", "delta", "status");
    for (const auto& spec : args.intervals) {
        std::vector<std::string_view> parts;
        csv::split(spec, ':', parts);
        double a, b;
        if (parts.size() != 2 || !csv::parse_double(parts[0], a) || !csv::parse_double(parts[1], b))
            throw invalid_parameter_error("--interval expects a:b, got '" + spec + "'");
        try {
            StubbornConfig cfg{a, b};
            json row = assess_one(in, cfg, args.assess, args.assess.uniform_rates, nullptr, nullptr);
            w.row(fmt(a), fmt(b), row["stubborn_count"].get<size_t>(),
                  fmt(row["mean_with"].get<double>()), fmt(row["mean_without"].get<double>()),
                  fmt(row["delta"].get<double>()), "ok");
        } catch (const std::exception& e) {
            std::string reason = e.what();
            std::replace(reason.begin(), reason.end(), ',', ';');
            w.row(fmt(a), fmt(b), "", "", "", "", "error: " + reason);
        }
    }
    w.close();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bot detection on retweet graphs and opinion-impact assessment"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key/value config file; command-line flags override");

    DetectArgs detect;
    auto* cmd_detect = app.add_subcommand("detect", "MAP bot labeling via minimum cut");
    cmd_detect->add_option("--graph", detect.graph_path, "retweet edge list CSV")->required();
    cmd_detect->add_option("--delimiter", detect.delimiter, "comma or tab");
    cmd_detect->add_flag("--header", detect.header, "input has a header row");
    cmd_detect->add_option("--lambda", detect.lambda, "centroid or l10,l00,l11,l01");
    cmd_detect->add_option("--gamma", detect.gamma, "link-energy scale");
    cmd_detect->add_option("--alpha-out", detect.alpha_out, "out-strength threshold");
    cmd_detect->add_option("--alpha-in", detect.alpha_in, "in-strength threshold");
    cmd_detect->add_option("--alpha-percentile", detect.alpha_percentile,
                           "strength percentile used when alphas are not explicit");
    cmd_detect->add_option("--node-energy", detect.node_energy, "zero, prior or uniform");
    cmd_detect->add_option("--priors", detect.priors_path, "user_id,pi CSV for prior mode");
    cmd_detect->add_option("--seed", detect.seed, "seed for uniform node energies");
    cmd_detect->add_option("--labels-out", detect.labels_out, "");
    cmd_detect->add_option("--probs-out", detect.probs_out, "");
    cmd_detect->add_option("--summary-out", detect.summary_out, "");
    cmd_detect->callback([&] { run_detect(detect); });

    EvalArgs eval;
    auto* cmd_eval = app.add_subcommand("eval", "ROC curve and AUC of scores against truth labels");
    cmd_eval->add_option("--scores", eval.scores_path, "user_id,probability CSV")->required();
    cmd_eval->add_option("--truth", eval.truth_path, "user_id,label CSV")->required();
    cmd_eval->add_option("--delimiter", eval.delimiter, "comma or tab");
    cmd_eval->add_option("--roc-out", eval.roc_out, "");
    cmd_eval->add_option("--summary-out", eval.summary_out, "");
    cmd_eval->callback([&] { run_eval(eval); });

    BehaviorArgs behavior;
    auto* cmd_behavior =
        app.add_subcommand("behavior", "retweets-per-target table and KS diagnostics");
    cmd_behavior->add_option("--graph", behavior.graph_path, "retweet edge list CSV")->required();
    cmd_behavior->add_option("--labels", behavior.labels_path, "user_id,label CSV")->required();
    cmd_behavior->add_option("--delimiter", behavior.delimiter, "comma or tab");
    cmd_behavior->add_flag("--header", behavior.header, "input has a header row");
    cmd_behavior->add_option("--rpt-out", behavior.rpt_out, "");
    cmd_behavior->add_option("--summary-out", behavior.summary_out, "");
    cmd_behavior->callback([&] { run_behavior(behavior); });

    auto* cmd_synth = app.add_subcommand("synth", "synthetic dataset generators");
    cmd_synth->require_subcommand(1);

    SynthRetweetArgs sr;
    auto* cmd_sr = cmd_synth->add_subcommand("retweet", "planted heterophilic bot retweet graph");
    cmd_sr->add_option("--humans", sr.cfg.n_humans, "");
    cmd_sr->add_option("--bots", sr.cfg.n_bots, "");
    cmd_sr->add_option("--bh-edges", sr.cfg.bot_to_human.mean_edges, "bot->human mean edges");
    cmd_sr->add_option("--hh-edges", sr.cfg.human_to_human.mean_edges, "human->human mean edges");
    cmd_sr->add_option("--bb-edges", sr.cfg.bot_to_bot.mean_edges, "bot->bot mean edges");
    cmd_sr->add_option("--hb-edges", sr.cfg.human_to_bot.mean_edges, "human->bot mean edges");
    cmd_sr->add_option("--mean-weight", [&sr](const std::vector<std::string>& vals) {
        double w;
        if (!csv::parse_double(vals[0], w)) return false;
        sr.cfg.bot_to_human.mean_weight = w;
        sr.cfg.human_to_human.mean_weight = w;
        sr.cfg.bot_to_bot.mean_weight = w;
        sr.cfg.human_to_bot.mean_weight = w;
        return true;
    }, "mean weight per edge (all classes)");
    cmd_sr->add_flag("--fixed-weights", [&sr](int64_t) { sr.cfg.geometric_weights = false; },
                     "use round(mean) instead of geometric weights");
    cmd_sr->add_option("--seed", sr.cfg.seed, "");
    cmd_sr->add_option("--out-dir", sr.out_dir, "");
    cmd_sr->callback([&] { run_synth_retweet(sr); });

    SynthOpinionArgs so;
    auto* cmd_so = cmd_synth->add_subcommand("opinion", "random stubborn-anchored follower network");
    cmd_so->add_option("--nodes", so.cfg.n, "");
    cmd_so->add_option("--stubborn-fraction", so.cfg.stubborn_fraction, "");
    cmd_so->add_option("--dist", so.dist, "uniform, polarized or extreme");
    cmd_so->add_option("--mean-friends", so.cfg.mean_friends, "");
    cmd_so->add_option("--rate-min", so.cfg.rate_min, "");
    cmd_so->add_option("--rate-max", so.cfg.rate_max, "");
    cmd_so->add_flag("--no-repair", [&so](int64_t) { so.cfg.repair = false; },
                     "skip grounding stranded nodes");
    cmd_so->add_option("--seed", so.cfg.seed, "");
    cmd_so->add_option("--out-dir", so.out_dir, "");
    cmd_so->callback([&] { run_synth_opinion(so); });

    auto add_state_files = [](CLI::App* cmd, StateFiles& files) {
        cmd->add_option("--follower-graph", files.graph_path, "follower edge list CSV")->required();
        cmd->add_option("--stubborn", files.stubborn_path, "user_id,opinion CSV")->required();
        cmd->add_option("--rates", files.rates_path, "user_id,rate CSV (default: every rate 1)");
        cmd->add_option("--delimiter", files.delimiter, "comma or tab");
        cmd->add_flag("--header", files.header, "graph input has a header row");
    };

    EquilibriumArgs eq;
    auto* cmd_eq = app.add_subcommand("equilibrium", "solve the stubborn-anchored equilibrium");
    add_state_files(cmd_eq, eq.files);
    cmd_eq->add_option("--tol", eq.tol, "");
    cmd_eq->add_option("--max-iter", eq.max_iter, "");
    cmd_eq->add_option("--damping", eq.damping, "");
    cmd_eq->add_option("--out", eq.out, "");
    cmd_eq->add_option("--summary-out", eq.summary_out, "");
    cmd_eq->callback([&] { run_equilibrium(eq); });

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "event-driven opinion simulation");
    add_state_files(cmd_sim, sim.files);
    cmd_sim->add_option("--events", sim.opts.events, "");
    cmd_sim->add_option("--seed", sim.opts.seed, "");
    cmd_sim->add_option("--sigma", sim.opts.noise_sigma, "post noise std dev");
    cmd_sim->add_option("--initial-opinion", sim.opts.initial_opinion, "");
    cmd_sim->add_option("--record-every", sim.opts.record_every, "trajectory sample period");
    cmd_sim->add_option("--out", sim.out, "");
    cmd_sim->add_option("--trajectory-out", sim.trajectory_out, "");
    cmd_sim->callback([&] { run_simulate(sim); });

    AssessArgs assess;
    auto add_assess_options = [&](CLI::App* cmd, AssessArgs& a) {
        cmd->add_option("--follower-graph", a.graph_path, "follower edge list CSV")->required();
        cmd->add_option("--tweets", a.tweets_path, "user_id,score[,text][,timestamp] CSV")->required();
        cmd->add_option("--bot-labels", a.bot_labels_path, "user_id,label CSV (detect output)");
        cmd->add_option("--bot-ids", a.bot_ids, "comma-separated bot user ids");
        cmd->add_option("--profiles", a.profiles_path, "user_id,description CSV (optional)");
        cmd->add_option("--lexicon", a.lexicon_path, "[pro]/[anti] phrase file");
        cmd->add_option("--delimiter", a.delimiter, "comma or tab");
        cmd->add_flag("--header", a.header, "graph input has a header row");
        cmd->add_option("--stubborn-lower", a.stubborn_lower, "stubborn interval [0,a]");
        cmd->add_option("--stubborn-upper", a.stubborn_upper, "stubborn interval [b,1]");
        cmd->add_option("--tol", a.tol, "");
        cmd->add_option("--max-iter", a.max_iter, "");
        cmd->add_option("--damping", a.damping, "");
        cmd->add_option("--removal", a.removal, "delete or silence");
    };
    auto* cmd_assess =
        app.add_subcommand("assess", "bot-induced equilibrium shift (generalized HIC)");
    add_assess_options(cmd_assess, assess);
    cmd_assess->add_flag("--uniform-rates", assess.uniform_rates,
                         "also report means with every rate set to 1");
    cmd_assess->add_option("--equilibrium-out", assess.equilibrium_out, "");
    cmd_assess->add_option("--summary-out", assess.summary_out, "");
    cmd_assess->callback([&] { run_assess(assess); });

    SweepArgs sweep;
    auto* cmd_sweep = app.add_subcommand("sweep", "assess across several stubborn intervals");
    add_assess_options(cmd_sweep, sweep.assess);
    cmd_sweep->add_option("--interval", sweep.intervals, "a:b stubborn interval (repeatable)");
    cmd_sweep->add_option("--out", sweep.out, "");
    cmd_sweep->callback([&] { run_sweep(sweep); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const invalid_parameter_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const infeasibility_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
