#pragma once

#include <atomic>
#include <functional>
#include <vector>

#include "sstp/brkga.hpp"
#include "sstp/chromosome.hpp"
#include "sstp/graph.hpp"

namespace sstp {

/// Plain (non-stochastic) Steiner tree instance. The graph is shared and
/// not owned; costs are per-instance because the solver rebuilds them for
/// every scenario and every chromosome.
struct StpInstance {
    const Graph* graph = nullptr;
    CostVector costs;
    std::vector<NodeId> terminals;  // sorted, unique
};

/// Shortest-path distances between all terminal pairs plus enough
/// predecessor state to reconstruct one shortest path per pair.
/// Distances are symmetric, satisfy the triangle inequality, d(t,t) = 0.
class TerminalMetric {
public:
    double distance(NodeId a, NodeId b) const;

    /// Edge ids of one shortest a-b path (a, b terminals). Ties were broken
    /// toward lower edge ids during the search.
    std::vector<EdgeId> path(NodeId a, NodeId b) const;

    const std::vector<NodeId>& terminals() const { return terminals_; }

private:
    friend TerminalMetric terminal_metric(const StpInstance&);

    const Graph* graph_ = nullptr;
    std::vector<NodeId> terminals_;
    std::vector<int> terminal_index_;        // node -> index into terminals_, -1 otherwise
    std::vector<std::vector<double>> dist_;  // [terminal index][node]
    std::vector<std::vector<EdgeId>> pred_;  // [terminal index][node], -1 at source
};

/// Label-setting single-source shortest paths from every terminal.
/// Throws sstp::InfeasibleError if any terminal cannot reach another.
TerminalMetric terminal_metric(const StpInstance& inst);

/// Classical spanning-tree approximation: minimum spanning tree over the
/// terminal shortest-path metric, expanded back to graph edges, reduced to a
/// tree (spanning tree of the expansion, then repeated removal of
/// non-terminal leaves). Result cost is at most twice the optimum.
/// Returns sorted edge ids; empty when fewer than two terminals.
std::vector<EdgeId> mst_approx(const StpInstance& inst);

/// Elementwise key-driven cost perturbation: multiplier 1 + alpha*(2k - 1),
/// i.e. keys below 0.5 discount an edge and keys above 0.5 inflate it.
/// A key of exactly 0.5 leaves the cost bit-identical.
CostVector perturb_costs(const CostVector& costs, const Chromosome& chrom, double alpha);

/// Decode a chromosome against an STP instance: run mst_approx on the
/// perturbed costs, evaluate the resulting tree with the original costs.
brkga::Decoded stp_decode(const Chromosome& chrom, const StpInstance& inst, double alpha);

/// Pluggable base heuristic contract: maps an STP instance to a tree
/// (edge-id set) spanning its terminals.
using StpHeuristic = std::function<std::vector<EdgeId>(const StpInstance&)>;

/// mst_approx wrapped as an StpHeuristic.
StpHeuristic mst_approx_heuristic();

/// BRKGA decoder over a fixed instance: perturbs the instance costs with the
/// chromosome, solves with the configured heuristic, reports fitness under
/// the instance's own (unperturbed) costs. Optionally counts heuristic calls.
struct StpDecoder {
    const StpInstance* instance = nullptr;
    const StpHeuristic* heuristic = nullptr;
    double alpha = 0.7;
    std::atomic<long long>* calls = nullptr;

    brkga::Decoded decode(const Chromosome& chrom) const;
};

} // namespace sstp
