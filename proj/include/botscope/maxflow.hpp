#pragma once

#include <cstdint>
#include <vector>

namespace botscope {

// Dinic max-flow on real-valued capacities. Arc scan order is fixed by
// insertion order, so the flow and the residual s-side partition are
// deterministic for a given construction sequence.
class DinicMaxFlow {
public:
    explicit DinicMaxFlow(uint32_t num_nodes) : head_(num_nodes, kNone), tail_(num_nodes, kNone) {}

    // Adds the residual pair for an arc a->b with capacity cap_ab and the
    // antiparallel capacity cap_ba (0 for a plain directed arc).
    void add_arc_pair(uint32_t a, uint32_t b, double cap_ab, double cap_ba);

    double solve(uint32_t source, uint32_t sink);

    // Nodes reachable from the source in the residual graph. Valid after solve.
    const std::vector<uint8_t>& source_side() const { return reachable_; }

    uint64_t phases() const { return phases_; }
    uint64_t augmentations() const { return augmentations_; }

    // Residual capacities below this are treated as saturated.
    static constexpr double kEps = 1e-12;

private:
    struct Arc {
        uint32_t to;
        uint32_t next;  // index of next arc out of the same node, kNone at end
        double cap;
    };
    static constexpr uint32_t kNone = UINT32_MAX;

    bool bfs(uint32_t source, uint32_t sink);
    double augment(uint32_t source, uint32_t sink);
    void compute_reachable(uint32_t source);

    std::vector<Arc> arcs_;
    std::vector<uint32_t> head_;  // first arc per node (insertion order via tail links)
    std::vector<uint32_t> tail_;
    std::vector<uint32_t> level_;
    std::vector<uint32_t> iter_;
    std::vector<uint32_t> queue_;
    std::vector<uint32_t> path_;
    std::vector<uint8_t> reachable_;
    uint64_t phases_ = 0;
    uint64_t augmentations_ = 0;
};

}  // namespace botscope
