#include "sstp/solution.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sstp/error.hpp"

namespace sstp {

namespace {

void check_structure(const SstpInstance& instance, const StochasticSolution& sol) {
    const EdgeId edges = instance.graph.edge_count();
    auto check_ids = [&](const std::vector<EdgeId>& set, const std::string& name) {
        for (EdgeId e : set)
            if (e < 0 || e >= edges) throw Error(name + ": edge id out of range");
    };
    check_ids(sol.first_stage, "first stage");
    if (sol.per_scenario.size() != instance.scenario_count())
        throw Error("per-scenario set count != scenario count");

    std::vector<char> in_first(static_cast<std::size_t>(edges), 0);
    for (EdgeId e : sol.first_stage) in_first[static_cast<std::size_t>(e)] = 1;
    for (std::size_t s = 0; s < sol.per_scenario.size(); ++s) {
        check_ids(sol.per_scenario[s], "scenario " + std::to_string(s));
        for (EdgeId e : sol.per_scenario[s])
            if (in_first[static_cast<std::size_t>(e)])
                throw Error("scenario " + std::to_string(s) +
                            ": edge " + std::to_string(e) + " overlaps the first stage");
    }
}

} // namespace

double solution_cost(const SstpInstance& instance, const StochasticSolution& sol) {
    check_structure(instance, sol);
    double total = 0.0;
    for (EdgeId e : sol.first_stage) total += instance.first_stage_costs[e];
    for (std::size_t s = 0; s < sol.per_scenario.size(); ++s) {
        double scenario_cost = 0.0;
        for (EdgeId e : sol.per_scenario[s]) scenario_cost += instance.scenarios[s].costs[e];
        total += instance.scenarios[s].probability * scenario_cost;
    }
    return total;
}

bool check_feasible(const SstpInstance& instance, const StochasticSolution& sol) {
    check_structure(instance, sol);
    std::vector<NodeId> parent(instance.graph.node_count());
    auto find = [&](NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t s = 0; s < instance.scenario_count(); ++s) {
        std::iota(parent.begin(), parent.end(), 0);
        auto unite = [&](EdgeId e) {
            auto [u, v] = instance.graph.edge(e);
            parent[find(u)] = find(v);
        };
        for (EdgeId e : sol.first_stage) unite(e);
        for (EdgeId e : sol.per_scenario[s]) unite(e);

        const auto& terms = instance.scenarios[s].terminals;
        if (terms.size() <= 1) continue;
        const NodeId root = find(terms.front());
        if (std::any_of(terms.begin(), terms.end(),
                        [&](NodeId t) { return find(t) != root; }))
            return false;
    }
    return true;
}

} // namespace sstp
