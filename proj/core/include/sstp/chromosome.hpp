#pragma once

#include <cstddef>
#include <vector>

#include "sstp/rng.hpp"

namespace sstp {

/// Random-key chromosome: one key in [0,1] per resource (edge).
struct Chromosome {
    std::vector<double> keys;

    Chromosome() = default;
    explicit Chromosome(std::vector<double> k) : keys(std::move(k)) {}

    std::size_t size() const { return keys.size(); }
    double operator[](std::size_t i) const { return keys[i]; }

    bool operator==(const Chromosome&) const = default;
};

/// All keys 0.5: leaves perturbed costs equal to the originals, so decoding
/// it reproduces the plain heuristic solution. Throws on m == 0.
Chromosome neutral_chromosome(std::size_t m);

/// m keys drawn uniformly from [0,1).
Chromosome random_chromosome(std::size_t m, Rng& rng);

} // namespace sstp
