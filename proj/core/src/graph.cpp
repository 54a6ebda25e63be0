#include "sstp/graph.hpp"

#include <algorithm>
#include <string>

#include "sstp/error.hpp"

namespace sstp {

namespace {

std::pair<NodeId, NodeId> normalized(std::pair<NodeId, NodeId> e) {
    if (e.first > e.second) std::swap(e.first, e.second);
    return e;
}

} // namespace

Graph::Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
    if (node_count_ < 0) throw Error("negative node count");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& [u, v] = edges_[i];
        if (u < 0 || u >= node_count_ || v < 0 || v >= node_count_)
            throw Error("edge " + std::to_string(i) + " references node out of range");
        if (u == v)
            throw Error("edge " + std::to_string(i) + " is a self loop");
    }

    by_pair_.resize(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) by_pair_[i] = static_cast<EdgeId>(i);
    std::sort(by_pair_.begin(), by_pair_.end(), [&](EdgeId a, EdgeId b) {
        return normalized(edges_[a]) < normalized(edges_[b]);
    });
    for (std::size_t i = 1; i < by_pair_.size(); ++i) {
        if (normalized(edges_[by_pair_[i - 1]]) == normalized(edges_[by_pair_[i]]))
            throw Error("parallel edge between nodes " +
                        std::to_string(normalized(edges_[by_pair_[i]]).first) + " and " +
                        std::to_string(normalized(edges_[by_pair_[i]]).second));
    }

    offsets_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[static_cast<std::size_t>(u) + 1];
        ++offsets_[static_cast<std::size_t>(v) + 1];
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(2 * edges_.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& [u, v] = edges_[i];
        adjacency_[cursor[u]++] = {v, static_cast<EdgeId>(i)};
        adjacency_[cursor[v]++] = {u, static_cast<EdgeId>(i)};
    }
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
    const auto key = normalized({u, v});
    auto it = std::lower_bound(by_pair_.begin(), by_pair_.end(), key,
                               [&](EdgeId e, const std::pair<NodeId, NodeId>& k) {
                                   return normalized(edges_[e]) < k;
                               });
    if (it == by_pair_.end() || normalized(edges_[*it]) != key) return std::nullopt;
    return *it;
}

} // namespace sstp
