#include "sstp/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <tuple>

#include "sstp/error.hpp"

namespace sstp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kruskal over the subgraph induced by `keep` (node bitmask); returns the
// spanning cost or +inf if the induced subgraph does not connect keep.
// `order` holds edge ids pre-sorted by (cost, id).
double induced_mst(const Graph& g, const CostVector& costs,
                   const std::vector<EdgeId>& order, std::uint32_t keep,
                   std::vector<EdgeId>* edges_out) {
    const int want = std::popcount(keep) - 1;
    if (want <= 0) return 0.0;
    std::array<NodeId, 16> parent{};
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    double cost = 0.0;
    int merged = 0;
    for (EdgeId e : order) {
        auto [u, v] = g.edge(e);
        if (!((keep >> u) & 1u) || !((keep >> v) & 1u)) continue;
        NodeId ru = find(u), rv = find(v);
        if (ru == rv) continue;
        parent[ru] = rv;
        cost += costs[e];
        if (edges_out) edges_out->push_back(e);
        if (++merged == want) return cost;
    }
    return kInf;
}

ExactStpResult exact_impl(const Graph& g, const CostVector& costs,
                          const std::vector<NodeId>& terminals) {
    ExactStpResult best;
    if (terminals.size() <= 1) return best;

    std::vector<EdgeId> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        return std::tie(costs[a], a) < std::tie(costs[b], b);
    });

    std::uint32_t term_mask = 0;
    for (NodeId t : terminals) term_mask |= 1u << t;
    std::vector<NodeId> steiner_nodes;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!((term_mask >> v) & 1u)) steiner_nodes.push_back(v);

    best.cost = kInf;
    std::uint32_t best_keep = 0;
    for (std::uint32_t sub = 0; sub < (1u << steiner_nodes.size()); ++sub) {
        std::uint32_t keep = term_mask;
        for (std::size_t k = 0; k < steiner_nodes.size(); ++k)
            if ((sub >> k) & 1u) keep |= 1u << steiner_nodes[k];
        const double c = induced_mst(g, costs, order, keep, nullptr);
        if (c < best.cost) {
            best.cost = c;
            best_keep = keep;
        }
    }
    if (best.cost == kInf)
        throw InfeasibleError("terminals are not mutually reachable");
    induced_mst(g, costs, order, best_keep, &best.edges);
    std::sort(best.edges.begin(), best.edges.end());
    return best;
}

} // namespace

ExactStpResult exact_steiner_tree(const StpInstance& inst) {
    if (inst.graph->node_count() > 16)
        throw Error("exact_steiner_tree refuses graphs with more than 16 nodes");
    return exact_impl(*inst.graph, inst.costs, inst.terminals);
}

ExactSstpResult exact_sstp(const SstpInstance& instance) {
    const Graph& g = instance.graph;
    if (g.node_count() > 16)
        throw Error("exact_sstp refuses graphs with more than 16 nodes");
    if (g.edge_count() > 20)
        throw Error("exact_sstp refuses instances with more than 20 edges");
    instance.require_feasible();

    const EdgeId m = g.edge_count();
    ExactSstpResult best;
    best.cost = kInf;
    std::uint32_t best_mask = 0;

    CostVector modified;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        double total = 0.0;
        for (EdgeId e = 0; e < m; ++e)
            if ((mask >> e) & 1u) total += instance.first_stage_costs[e];
        if (total >= best.cost) continue;
        for (const auto& scen : instance.scenarios) {
            if (scen.terminals.size() <= 1) continue;
            modified = scen.costs;
            for (EdgeId e = 0; e < m; ++e)
                if ((mask >> e) & 1u) modified[e] = 0.0;
            total += scen.probability * exact_impl(g, modified, scen.terminals).cost;
            if (total >= best.cost) break;
        }
        if (total < best.cost) {
            best.cost = total;
            best_mask = mask;
        }
    }

    for (EdgeId e = 0; e < m; ++e)
        if ((best_mask >> e) & 1u) best.first_stage.push_back(e);
    for (const auto& scen : instance.scenarios) {
        std::vector<EdgeId> set;
        if (scen.terminals.size() > 1) {
            modified = scen.costs;
            for (EdgeId e : best.first_stage) modified[e] = 0.0;
            for (EdgeId e : exact_impl(g, modified, scen.terminals).edges)
                if (!((best_mask >> e) & 1u)) set.push_back(e);
        }
        best.per_scenario.push_back(std::move(set));
    }
    return best;
}

} // namespace sstp
