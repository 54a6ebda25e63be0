#pragma once

#include <string>
#include <vector>

#include "sstp/graph.hpp"

namespace sstp {

/// One realization of the uncertain future: occurrence probability,
/// second-stage edge costs and the terminal set to connect.
struct Scenario {
    double probability = 0.0;
    CostVector costs;                 // second-stage costs, one per edge
    std::vector<NodeId> terminals;    // sorted, unique
};

/// Two-stage stochastic Steiner tree instance: a shared graph, first-stage
/// edge costs and a finite scenario set. Immutable after construction.
struct SstpInstance {
    Graph graph;
    CostVector first_stage_costs;
    std::vector<Scenario> scenarios;

    std::size_t scenario_count() const { return scenarios.size(); }

    std::vector<double> probabilities() const;

    /// Structural validation: cost vector lengths, non-negative costs,
    /// probabilities in (0,1] summing to 1 within 1e-6, terminal ids in
    /// range. Throws sstp::Error with a description on violation.
    void validate() const;

    /// Throws sstp::InfeasibleError unless, for every scenario, all
    /// terminals lie in one connected component of the full graph.
    void require_feasible() const;
};

/// Tolerance for the scenario probability sum (values are stored as given,
/// never renormalized).
inline constexpr double kProbabilitySumTolerance = 1e-6;

} // namespace sstp
