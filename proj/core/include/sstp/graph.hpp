#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace sstp {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

/// Per-edge values (costs, perturbed costs, ...), indexed by edge id.
using CostVector = std::vector<double>;

/// Undirected simple graph. Nodes are 0-based, edge ids are positions in the
/// edge list given at construction. Immutable after construction and safe to
/// share read-only across threads.
class Graph {
public:
    struct Adjacency {
        NodeId to;
        EdgeId edge;
    };

    /// Validates: endpoints in range, no self loops, no parallel edges.
    /// Throws sstp::Error on violation.
    Graph(NodeId node_count, std::vector<std::pair<NodeId, NodeId>> edges);

    NodeId node_count() const { return node_count_; }
    EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }

    std::pair<NodeId, NodeId> edge(EdgeId e) const { return edges_[e]; }

    NodeId other_end(EdgeId e, NodeId v) const {
        const auto& [a, b] = edges_[e];
        return a == v ? b : a;
    }

    std::span<const Adjacency> neighbors(NodeId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    /// Edge id for an unordered node pair, if present.
    std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

private:
    NodeId node_count_;
    std::vector<std::pair<NodeId, NodeId>> edges_;
    std::vector<std::size_t> offsets_;     // CSR offsets, size node_count_+1
    std::vector<Adjacency> adjacency_;     // CSR payload, size 2*|E|
    std::vector<EdgeId> by_pair_;          // edge ids sorted by normalized pair
};

} // namespace sstp
