#include "botscope/maxflow.hpp"

#include <limits>

namespace botscope {

void DinicMaxFlow::add_arc_pair(uint32_t a, uint32_t b, double cap_ab, double cap_ba) {
    auto link = [&](uint32_t from, uint32_t arc_idx) {
        if (tail_[from] == kNone)
            head_[from] = arc_idx;
        else
            arcs_[tail_[from]].next = arc_idx;
        tail_[from] = arc_idx;
    };
    uint32_t idx = static_cast<uint32_t>(arcs_.size());
    arcs_.push_back({b, kNone, cap_ab});
    arcs_.push_back({a, kNone, cap_ba});
    link(a, idx);
    link(b, idx + 1);
}

bool DinicMaxFlow::bfs(uint32_t source, uint32_t sink) {
    level_.assign(head_.size(), kNone);
    queue_.clear();
    queue_.push_back(source);
    level_[source] = 0;
    for (size_t qi = 0; qi < queue_.size(); ++qi) {
        uint32_t v = queue_[qi];
        for (uint32_t a = head_[v]; a != kNone; a = arcs_[a].next) {
            const Arc& arc = arcs_[a];
            if (arc.cap > kEps && level_[arc.to] == kNone) {
                level_[arc.to] = level_[v] + 1;
                queue_.push_back(arc.to);
            }
        }
    }
    return level_[sink] != kNone;
}

double DinicMaxFlow::augment(uint32_t source, uint32_t sink) {
    path_.clear();
    uint32_t v = source;
    while (true) {
        if (v == sink) {
            double bottleneck = std::numeric_limits<double>::infinity();
            for (uint32_t a : path_) bottleneck = std::min(bottleneck, arcs_[a].cap);
            for (uint32_t a : path_) {
                arcs_[a].cap -= bottleneck;
                arcs_[a ^ 1].cap += bottleneck;
            }
            return bottleneck;
        }
        uint32_t a = iter_[v];
        while (a != kNone) {
            const Arc& arc = arcs_[a];
            if (arc.cap > kEps && level_[arc.to] == level_[v] + 1) break;
            a = arc.next;
        }
        iter_[v] = a;
        if (a == kNone) {
            level_[v] = kNone;  // dead this phase
            if (path_.empty()) return 0.0;
            uint32_t back = path_.back();
            path_.pop_back();
            v = arcs_[back ^ 1].to;
        } else {
            path_.push_back(a);
            v = arcs_[a].to;
        }
    }
}

double DinicMaxFlow::solve(uint32_t source, uint32_t sink) {
    double flow = 0.0;
    while (bfs(source, sink)) {
        ++phases_;
        iter_ = head_;
        double pushed;
        while ((pushed = augment(source, sink)) > kEps) {
            flow += pushed;
            ++augmentations_;
        }
    }
    compute_reachable(source);
    return flow;
}

void DinicMaxFlow::compute_reachable(uint32_t source) {
    reachable_.assign(head_.size(), 0);
    queue_.clear();
    queue_.push_back(source);
    reachable_[source] = 1;
    for (size_t qi = 0; qi < queue_.size(); ++qi) {
        uint32_t v = queue_[qi];
        for (uint32_t a = head_[v]; a != kNone; a = arcs_[a].next) {
            const Arc& arc = arcs_[a];
            if (arc.cap > kEps && !reachable_[arc.to]) {
                reachable_[arc.to] = 1;
                queue_.push_back(arc.to);
            }
        }
    }
}

}  // namespace botscope
