#include "sstp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sstp/error.hpp"

namespace sstp {

std::vector<double> SstpInstance::probabilities() const {
    std::vector<double> out;
    out.reserve(scenarios.size());
    for (const auto& s : scenarios) out.push_back(s.probability);
    return out;
}

void SstpInstance::validate() const {
    const auto edges = static_cast<std::size_t>(graph.edge_count());
    if (first_stage_costs.size() != edges)
        throw Error("first-stage cost vector length != edge count");
    for (double c : first_stage_costs)
        if (!(c >= 0.0)) throw Error("negative first-stage cost");

    if (scenarios.empty()) throw Error("instance has no scenarios");
    double prob_sum = 0.0;
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& s = scenarios[i];
        if (!(s.probability > 0.0) || s.probability > 1.0)
            throw Error("scenario " + std::to_string(i) + ": probability outside (0,1]");
        prob_sum += s.probability;
        if (s.costs.size() != edges)
            throw Error("scenario " + std::to_string(i) + ": cost vector length != edge count");
        for (double c : s.costs)
            if (!(c >= 0.0)) throw Error("scenario " + std::to_string(i) + ": negative cost");
        for (NodeId t : s.terminals)
            if (t < 0 || t >= graph.node_count())
                throw Error("scenario " + std::to_string(i) + ": terminal node out of range");
        if (!std::is_sorted(s.terminals.begin(), s.terminals.end()) ||
            std::adjacent_find(s.terminals.begin(), s.terminals.end()) != s.terminals.end())
            throw Error("scenario " + std::to_string(i) + ": terminals not sorted/unique");
    }
    if (std::abs(prob_sum - 1.0) > kProbabilitySumTolerance)
        throw Error("scenario probabilities sum to " + std::to_string(prob_sum) +
                    ", expected 1 within 1e-6");
}

void SstpInstance::require_feasible() const {
    // single union-find over the whole edge set; every scenario's terminals
    // must land in one component
    std::vector<NodeId> parent(graph.node_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (EdgeId e = 0; e < graph.edge_count(); ++e) {
        auto [u, v] = graph.edge(e);
        parent[find(u)] = find(v);
    }
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& terms = scenarios[i].terminals;
        if (terms.size() <= 1) continue;
        const NodeId root = find(terms.front());
        for (NodeId t : terms)
            if (find(t) != root)
                throw InfeasibleError("scenario " + std::to_string(i) +
                                      ": terminals are not mutually reachable");
    }
}

} // namespace sstp
