#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "botscope/graph.hpp"
#include "botscope/opinion.hpp"

namespace helpers {

struct E {
    uint32_t src, dst;
    double w = 1.0;
};

inline botscope::SocialGraph make_graph(botscope::EdgeRole role, uint32_t n,
                                        const std::vector<E>& edges) {
    botscope::GraphBuilder b(role);
    for (uint32_t i = 0; i < n; ++i) b.intern("u" + std::to_string(i));
    for (const auto& e : edges) b.add_edge(e.src, e.dst, e.w);
    return b.build();
}

inline botscope::SocialGraph make_retweet(uint32_t n, const std::vector<E>& edges) {
    return make_graph(botscope::EdgeRole::Retweet, n, edges);
}

// follower semantics: pass edges as (j,i) meaning i follows j
inline botscope::SocialGraph make_follower(uint32_t n, const std::vector<E>& edges) {
    return make_graph(botscope::EdgeRole::Follower, n, edges);
}

struct Anchor {
    uint32_t node;
    double opinion;
};

inline botscope::OpinionState make_state(botscope::SocialGraph graph,
                                         const std::vector<Anchor>& anchors,
                                         std::vector<double> rates = {}) {
    botscope::OpinionState st;
    uint32_t n = graph.node_count();
    st.graph = std::make_shared<botscope::SocialGraph>(std::move(graph));
    st.stubborn.assign(n, 0);
    st.opinion.assign(n, 0.0);
    st.rate = rates.empty() ? std::vector<double>(n, 1.0) : std::move(rates);
    for (const auto& a : anchors) {
        st.stubborn[a.node] = 1;
        st.opinion[a.node] = a.opinion;
    }
    return st;
}

// scratch directory under the build tree, wiped per instantiation
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name) {
        path = std::filesystem::temp_directory_path() / ("botscope_test_" + name);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace helpers
