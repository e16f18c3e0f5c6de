#include "botscope/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "botscope/csv.hpp"
#include "botscope/errors.hpp"

namespace botscope {

std::optional<uint32_t> SocialGraph::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

uint32_t GraphBuilder::intern(std::string_view id) {
    auto it = index_.find(std::string(id));
    if (it != index_.end()) return it->second;
    uint32_t idx = static_cast<uint32_t>(ids_.size());
    ids_.emplace_back(id);
    index_.emplace(ids_.back(), idx);
    return idx;
}

void GraphBuilder::add_edge(uint32_t src, uint32_t dst, double weight) {
    if (src == dst) {
        ++report_.self_loops_dropped;
        return;
    }
    edges_.push_back({src, dst, weight});
}

SocialGraph GraphBuilder::build() {
    SocialGraph g;
    g.role_ = role_;
    g.ids_ = std::move(ids_);
    g.index_ = std::move(index_);
    const uint32_t n = static_cast<uint32_t>(g.ids_.size());

    std::sort(edges_.begin(), edges_.end(), [](const RawEdge& a, const RawEdge& b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    // merge parallel edges by summing weights
    size_t merged = 0;
    size_t out = 0;
    for (size_t i = 0; i < edges_.size();) {
        size_t j = i + 1;
        double w = edges_[i].w;
        while (j < edges_.size() && edges_[j].src == edges_[i].src && edges_[j].dst == edges_[i].dst) {
            w += edges_[j].w;
            ++j;
            ++merged;
        }
        edges_[out] = {edges_[i].src, edges_[i].dst, w};
        ++out;
        i = j;
    }
    edges_.resize(out);
    report_.parallel_merged = merged;

    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const auto& e : edges_) {
        ++g.out_offsets_[e.src + 1];
        ++g.in_offsets_[e.dst + 1];
    }
    std::partial_sum(g.out_offsets_.begin(), g.out_offsets_.end(), g.out_offsets_.begin());
    std::partial_sum(g.in_offsets_.begin(), g.in_offsets_.end(), g.in_offsets_.begin());

    g.out_dst_.resize(edges_.size());
    g.out_w_.resize(edges_.size());
    g.in_src_.resize(edges_.size());
    g.in_w_.resize(edges_.size());
    {
        std::vector<uint64_t> pos(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
        for (const auto& e : edges_) {
            uint64_t p = pos[e.src]++;
            g.out_dst_[p] = e.dst;
            g.out_w_[p] = e.w;
        }
    }
    {
        // edges_ is sorted by (src,dst); filling per-dst keeps in-lists sorted by src
        std::vector<uint64_t> pos(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
        for (const auto& e : edges_) {
            uint64_t p = pos[e.dst]++;
            g.in_src_[p] = e.src;
            g.in_w_[p] = e.w;
        }
    }

    g.out_strength_.assign(n, 0.0);
    g.in_strength_.assign(n, 0.0);
    for (uint32_t i = 0; i < n; ++i) {
        double s = 0;
        for (double w : g.out_weights(i)) s += w;
        g.out_strength_[i] = s;
        s = 0;
        for (double w : g.in_weights(i)) s += w;
        g.in_strength_[i] = s;
    }

    report_.nodes = n;
    report_.edges = edges_.size();
    edges_.clear();
    return g;
}

SocialGraph SocialGraph::without_nodes(const std::vector<uint8_t>& remove_mask,
                                       std::vector<int64_t>& old_to_new) const {
    const uint32_t n = node_count();
    old_to_new.assign(n, -1);
    GraphBuilder builder(role_);
    for (uint32_t i = 0; i < n; ++i) {
        if (remove_mask[i]) continue;
        old_to_new[i] = builder.intern(ids_[i]);
    }
    for (uint32_t i = 0; i < n; ++i) {
        if (remove_mask[i]) continue;
        auto nbrs = out_neighbors(i);
        auto ws = out_weights(i);
        for (size_t k = 0; k < nbrs.size(); ++k) {
            if (remove_mask[nbrs[k]]) continue;
            builder.add_edge(static_cast<uint32_t>(old_to_new[i]),
                             static_cast<uint32_t>(old_to_new[nbrs[k]]), ws[k]);
        }
    }
    return builder.build();
}

SocialGraph ingest_edge_list(const std::string& path, EdgeRole role, const IngestOptions& options,
                             IngestReport* report) {
    GraphBuilder builder(role);
    size_t rows = 0;
    csv::for_each_row(path, options.delimiter, options.has_header,
                      [&](size_t lineno, const std::vector<std::string_view>& fields) {
                          ++rows;
                          if (fields.size() < 2 || fields.size() > 3)
                              throw io_error(path + ":" + std::to_string(lineno) +
                                             ": expected src,dst[,weight]");
                          auto src = csv::trim(fields[0]);
                          auto dst = csv::trim(fields[1]);
                          if (src.empty() || dst.empty())
                              throw io_error(path + ":" + std::to_string(lineno) + ": empty node id");
                          double w = 1.0;
                          if (fields.size() == 3) {
                              if (!csv::parse_double(fields[2], w))
                                  throw io_error(path + ":" + std::to_string(lineno) +
                                                 ": bad weight '" + std::string(fields[2]) + "'");
                              if (!(w >= 0) || !std::isfinite(w))
                                  throw io_error(path + ":" + std::to_string(lineno) +
                                                 ": negative or non-finite weight");
                          }
                          builder.add_edge(src, dst, w);
                      });
    SocialGraph g = builder.build();
    if (report) {
        *report = builder.report();
        report->rows_read = rows;
    }
    return g;
}

void write_edge_list(const SocialGraph& graph, const std::string& path, char delimiter) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open file for writing: " + path);
    for (uint32_t i = 0; i < graph.node_count(); ++i) {
        auto nbrs = graph.out_neighbors(i);
        auto ws = graph.out_weights(i);
        for (size_t k = 0; k < nbrs.size(); ++k) {
            out << graph.id(i) << delimiter << graph.id(nbrs[k]) << delimiter
                << csv::format_double(ws[k]) << '\n';
        }
    }
    if (!out) throw io_error("write failed: " + path);
}

double degree_percentile(const SocialGraph& graph, StrengthKind which, double q) {
    const uint32_t n = graph.node_count();
    if (n == 0) throw invalid_parameter_error("degree_percentile: empty graph");
    if (!(q > 0.0 && q <= 100.0))
        throw invalid_parameter_error("degree_percentile: q must be in (0,100]");
    std::vector<double> vals(n);
    for (uint32_t i = 0; i < n; ++i)
        vals[i] = which == StrengthKind::Out ? graph.out_strength(i) : graph.in_strength(i);
    std::sort(vals.begin(), vals.end());
    size_t rank = static_cast<size_t>(std::ceil(q * n / 100.0 - 1e-9));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return vals[rank - 1];
}

}  // namespace botscope
