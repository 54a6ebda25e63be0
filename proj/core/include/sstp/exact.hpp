#pragma once

#include <vector>

#include "sstp/instance.hpp"
#include "sstp/steiner.hpp"

namespace sstp {

struct ExactStpResult {
    std::vector<EdgeId> edges;  // sorted
    double cost = 0.0;
};

/// Optimal Steiner tree by enumerating subsets of non-terminal nodes and
/// taking the best spanning tree over terminals plus subset. Desk scale
/// only: refuses graphs with more than 16 nodes.
ExactStpResult exact_steiner_tree(const StpInstance& inst);

struct ExactSstpResult {
    std::vector<EdgeId> first_stage;                // sorted
    std::vector<std::vector<EdgeId>> per_scenario;  // sorted, exclude first stage
    double cost = 0.0;
};

/// Exhaustive two-stage optimum: enumerates every first-stage edge subset
/// and completes each scenario with exact_steiner_tree under zeroed
/// first-stage costs. Refuses instances with more than 20 edges or 16 nodes.
ExactSstpResult exact_sstp(const SstpInstance& instance);

} // namespace sstp
