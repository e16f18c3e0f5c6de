#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace botscope {

// Role a graph plays. Retweet: edge i->j means i retweeted j (weight = count).
// Follower: edge j->i means i follows j, so j's posts reach i.
enum class EdgeRole { Retweet, Follower };

enum class StrengthKind { Out, In };

struct IngestReport {
    size_t rows_read = 0;
    size_t self_loops_dropped = 0;
    size_t parallel_merged = 0;
    size_t nodes = 0;
    size_t edges = 0;
};

struct IngestOptions {
    char delimiter = ',';
    bool has_header = false;
};

// Directed weighted graph over interned user ids. Immutable once built:
// parallel edges are merged by summing weights, self-loops dropped, and
// per-node in/out strengths cached. Safe to share read-only across threads.
class SocialGraph {
public:
    uint32_t node_count() const { return static_cast<uint32_t>(ids_.size()); }
    size_t edge_count() const { return out_dst_.size(); }
    EdgeRole role() const { return role_; }

    const std::string& id(uint32_t node) const { return ids_[node]; }
    std::optional<uint32_t> find(std::string_view id) const;

    std::span<const uint32_t> out_neighbors(uint32_t i) const {
        return {out_dst_.data() + out_offsets_[i], out_dst_.data() + out_offsets_[i + 1]};
    }
    std::span<const double> out_weights(uint32_t i) const {
        return {out_w_.data() + out_offsets_[i], out_w_.data() + out_offsets_[i + 1]};
    }
    std::span<const uint32_t> in_neighbors(uint32_t i) const {
        return {in_src_.data() + in_offsets_[i], in_src_.data() + in_offsets_[i + 1]};
    }
    std::span<const double> in_weights(uint32_t i) const {
        return {in_w_.data() + in_offsets_[i], in_w_.data() + in_offsets_[i + 1]};
    }

    double out_strength(uint32_t i) const { return out_strength_[i]; }
    double in_strength(uint32_t i) const { return in_strength_[i]; }

    // Copy without the masked nodes and their incident edges; remaining nodes
    // keep their relative order. old_to_new[i] is -1 for removed nodes.
    SocialGraph without_nodes(const std::vector<uint8_t>& remove_mask,
                              std::vector<int64_t>& old_to_new) const;

private:
    friend class GraphBuilder;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, uint32_t> index_;
    EdgeRole role_ = EdgeRole::Retweet;

    std::vector<uint64_t> out_offsets_;
    std::vector<uint32_t> out_dst_;
    std::vector<double> out_w_;
    std::vector<uint64_t> in_offsets_;
    std::vector<uint32_t> in_src_;
    std::vector<double> in_w_;
    std::vector<double> out_strength_, in_strength_;
};

class GraphBuilder {
public:
    explicit GraphBuilder(EdgeRole role) : role_(role) {}

    uint32_t intern(std::string_view id);
    // Self-loops are counted and dropped; negative weights rejected by the
    // ingestion layer before reaching here.
    void add_edge(uint32_t src, uint32_t dst, double weight);
    void add_edge(std::string_view src, std::string_view dst, double weight) {
        add_edge(intern(src), intern(dst), weight);
    }

    SocialGraph build();
    const IngestReport& report() const { return report_; }

private:
    EdgeRole role_;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, uint32_t> index_;
    struct RawEdge { uint32_t src, dst; double w; };
    std::vector<RawEdge> edges_;
    IngestReport report_;
};

// Edge-list file: one edge per line, `src<delim>dst[<delim>weight]`, missing
// weight defaults to 1. Malformed rows and negative weights raise io_error
// naming the line; an empty file yields an empty graph.
SocialGraph ingest_edge_list(const std::string& path, EdgeRole role, const IngestOptions& options,
                             IngestReport* report = nullptr);

void write_edge_list(const SocialGraph& graph, const std::string& path, char delimiter = ',');

// Nearest-rank percentile of the in- or out-strength distribution: smallest
// value with at least ceil(q*n/100) values <= it. q in (0,100].
double degree_percentile(const SocialGraph& graph, StrengthKind which, double q);

}  // namespace botscope
