#include "sstp/steiner.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

#include "sstp/error.hpp"

namespace sstp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
    std::vector<NodeId> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    NodeId find(NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

void dijkstra(const Graph& g, const CostVector& costs, NodeId source,
              std::vector<double>& dist, std::vector<EdgeId>& pred) {
    dist.assign(g.node_count(), kInf);
    pred.assign(g.node_count(), -1);
    std::vector<char> done(g.node_count(), 0);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[source] = 0.0;
    pq.push({0.0, source});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (const auto& [v, e] : g.neighbors(u)) {
            if (done[v]) continue;
            const double nd = d + costs[e];
            if (nd < dist[v]) {
                dist[v] = nd;
                pred[v] = e;
                pq.push({nd, v});
            } else if (nd == dist[v] && pred[v] >= 0 && e < pred[v]) {
                // equal-length path: keep the lower edge id so path
                // reconstruction is deterministic
                pred[v] = e;
            }
        }
    }
}

#ifndef NDEBUG
bool is_tree_spanning(const Graph& g, const std::vector<EdgeId>& tree,
                      const std::vector<NodeId>& terminals) {
    UnionFind uf(g.node_count());
    for (EdgeId e : tree) {
        auto [u, v] = g.edge(e);
        if (!uf.unite(u, v)) return false;  // cycle
    }
    if (terminals.size() > 1) {
        const NodeId root = uf.find(terminals.front());
        for (NodeId t : terminals)
            if (uf.find(t) != root) return false;
    }
    return true;
}
#endif

} // namespace

double TerminalMetric::distance(NodeId a, NodeId b) const {
    return dist_[terminal_index_[a]][b];
}

std::vector<EdgeId> TerminalMetric::path(NodeId a, NodeId b) const {
    const auto& pred = pred_[terminal_index_[a]];
    std::vector<EdgeId> out;
    for (NodeId v = b; v != a;) {
        const EdgeId e = pred[v];
        out.push_back(e);
        v = graph_->other_end(e, v);
    }
    return out;
}

TerminalMetric terminal_metric(const StpInstance& inst) {
    TerminalMetric m;
    m.graph_ = inst.graph;
    m.terminals_ = inst.terminals;
    m.terminal_index_.assign(inst.graph->node_count(), -1);
    for (std::size_t i = 0; i < m.terminals_.size(); ++i)
        m.terminal_index_[m.terminals_[i]] = static_cast<int>(i);
    m.dist_.resize(m.terminals_.size());
    m.pred_.resize(m.terminals_.size());
    for (std::size_t i = 0; i < m.terminals_.size(); ++i) {
        dijkstra(*inst.graph, inst.costs, m.terminals_[i], m.dist_[i], m.pred_[i]);
        for (NodeId t : m.terminals_)
            if (m.dist_[i][t] == kInf)
                throw InfeasibleError("terminal " + std::to_string(t) +
                                      " unreachable from terminal " +
                                      std::to_string(m.terminals_[i]));
    }
    return m;
}

std::vector<EdgeId> mst_approx(const StpInstance& inst) {
    const auto& terminals = inst.terminals;
    if (terminals.size() <= 1) return {};

    const TerminalMetric metric = terminal_metric(inst);

    // MST of the complete terminal graph; ties by lexicographic node pair
    struct Pair {
        double d;
        NodeId a, b;
    };
    std::vector<Pair> pairs;
    pairs.reserve(terminals.size() * (terminals.size() - 1) / 2);
    for (std::size_t i = 0; i < terminals.size(); ++i)
        for (std::size_t j = i + 1; j < terminals.size(); ++j)
            pairs.push_back({metric.distance(terminals[i], terminals[j]),
                             terminals[i], terminals[j]});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        return std::tie(x.d, x.a, x.b) < std::tie(y.d, y.a, y.b);
    });

    std::vector<char> in_union(inst.graph->edge_count(), 0);
    {
        UnionFind uf(inst.graph->node_count());
        std::size_t merged = 0;
        for (const auto& pr : pairs) {
            if (!uf.unite(pr.a, pr.b)) continue;
            for (EdgeId e : metric.path(pr.a, pr.b)) in_union[e] = 1;
            if (++merged == terminals.size() - 1) break;
        }
    }

    // spanning tree of the expanded subgraph, cheapest edges first
    std::vector<EdgeId> union_edges;
    for (EdgeId e = 0; e < inst.graph->edge_count(); ++e)
        if (in_union[e]) union_edges.push_back(e);
    std::sort(union_edges.begin(), union_edges.end(), [&](EdgeId x, EdgeId y) {
        return std::tie(inst.costs[x], x) < std::tie(inst.costs[y], y);
    });
    std::vector<EdgeId> tree;
    {
        UnionFind uf(inst.graph->node_count());
        for (EdgeId e : union_edges) {
            auto [u, v] = inst.graph->edge(e);
            if (uf.unite(u, v)) tree.push_back(e);
        }
    }

    // peel non-terminal leaves
    std::vector<char> is_terminal(inst.graph->node_count(), 0);
    for (NodeId t : terminals) is_terminal[t] = 1;
    std::vector<int> degree(inst.graph->node_count(), 0);
    std::vector<std::vector<EdgeId>> incident(inst.graph->node_count());
    for (EdgeId e : tree) {
        auto [u, v] = inst.graph->edge(e);
        ++degree[u];
        ++degree[v];
        incident[u].push_back(e);
        incident[v].push_back(e);
    }
    std::vector<char> removed(inst.graph->edge_count(), 0);
    std::vector<NodeId> stack;
    for (NodeId v = 0; v < inst.graph->node_count(); ++v)
        if (degree[v] == 1 && !is_terminal[v]) stack.push_back(v);
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        if (degree[v] != 1 || is_terminal[v]) continue;
        for (EdgeId e : incident[v]) {
            if (removed[e]) continue;
            removed[e] = 1;
            const NodeId w = inst.graph->other_end(e, v);
            --degree[v];
            --degree[w];
            if (degree[w] == 1 && !is_terminal[w]) stack.push_back(w);
            break;
        }
    }
    std::erase_if(tree, [&](EdgeId e) { return removed[e] != 0; });
    std::sort(tree.begin(), tree.end());

    assert(is_tree_spanning(*inst.graph, tree, terminals));
    return tree;
}

CostVector perturb_costs(const CostVector& costs, const Chromosome& chrom, double alpha) {
    if (costs.size() != chrom.size()) throw Error("chromosome/cost length mismatch");
    if (!(alpha > 0.0) || alpha > 1.0) throw Error("alpha must be in (0,1]");
    CostVector out(costs.size());
    for (std::size_t i = 0; i < costs.size(); ++i)
        out[i] = (1.0 + alpha * (2.0 * chrom.keys[i] - 1.0)) * costs[i];
    return out;
}

brkga::Decoded stp_decode(const Chromosome& chrom, const StpInstance& inst, double alpha) {
    StpInstance perturbed{inst.graph, perturb_costs(inst.costs, chrom, alpha),
                          inst.terminals};
    brkga::Decoded d;
    d.resources = mst_approx(perturbed);
    for (EdgeId e : d.resources) d.fitness += inst.costs[e];
    return d;
}

StpHeuristic mst_approx_heuristic() {
    return [](const StpInstance& inst) { return mst_approx(inst); };
}

brkga::Decoded StpDecoder::decode(const Chromosome& chrom) const {
    if (calls) calls->fetch_add(1, std::memory_order_relaxed);
    StpInstance perturbed{instance->graph,
                          perturb_costs(instance->costs, chrom, alpha),
                          instance->terminals};
    brkga::Decoded d;
    d.resources = (*heuristic)(perturbed);
    for (EdgeId e : d.resources) d.fitness += instance->costs[e];
    return d;
}

} // namespace sstp
