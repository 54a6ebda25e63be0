#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace sstp {

/// One benchmark row: a solver run on one instance with one seed, paired
/// with the defer-everything bound. delta_c_percent is the percentage saved
/// relative to that bound; gap_percent needs a known optimum.
struct RunRecord {
    std::string instance_id;
    std::uint64_t seed = 0;
    double cost = 0.0;
    double buy_none_cost = 0.0;
    double delta_c_percent = 0.0;
    std::optional<double> gap_percent;
    double wall_seconds = 0.0;
    long long iterations = 0;
    long long heuristic_calls = 0;
};

} // namespace sstp
