#pragma once

#include <vector>

#include "sstp/instance.hpp"

namespace sstp {

/// A full two-stage solution: edges bought up front plus, per scenario, the
/// edges bought after the scenario realizes. Per-scenario sets are disjoint
/// from the first stage. `cost` caches the objective value and must always
/// equal solution_cost() recomputed.
struct StochasticSolution {
    std::vector<EdgeId> first_stage;                // sorted
    std::vector<std::vector<EdgeId>> per_scenario;  // sorted, one per scenario
    double cost = 0.0;
};

/// First-stage cost plus probability-weighted second-stage cost. Pure.
/// Throws sstp::Error on index-out-of-range or first/second stage overlap.
double solution_cost(const SstpInstance& instance, const StochasticSolution& sol);

/// True iff in every scenario the bought edges (first stage plus that
/// scenario's set) connect all of the scenario's terminals.
bool check_feasible(const SstpInstance& instance, const StochasticSolution& sol);

} // namespace sstp
