#include "sstp/chromosome.hpp"

#include "sstp/error.hpp"

namespace sstp {

Chromosome neutral_chromosome(std::size_t m) {
    if (m == 0) throw Error("chromosome length must be >= 1");
    return Chromosome(std::vector<double>(m, 0.5));
}

Chromosome random_chromosome(std::size_t m, Rng& rng) {
    std::vector<double> keys(m);
    for (auto& k : keys) k = rng.uniform01();
    return Chromosome(std::move(keys));
}

} // namespace sstp
