#pragma once

#include <algorithm>
#include <concepts>
#include <utility>
#include <vector>

#include "sstp/chromosome.hpp"
#include "sstp/error.hpp"
#include "sstp/graph.hpp"
#include "sstp/params.hpp"
#include "sstp/rng.hpp"

namespace sstp::brkga {

/// A decoded solution: the selected resources and their fitness evaluated
/// with the decoder's unperturbed costs.
struct Decoded {
    std::vector<EdgeId> resources;
    double fitness = 0.0;
};

/// Decoder contract: deterministic, read-only over instance data, fitness
/// computed with the original (unperturbed) costs.
template <typename D>
concept Decoder = requires(const D& d, const Chromosome& q) {
    { d.decode(q) } -> std::convertible_to<Decoded>;
};

struct Individual {
    Chromosome chromosome;
    std::vector<EdgeId> solution;
    double fitness = 0.0;
};

/// p individuals, undecoded: index 0 holds the seed chromosome, the rest are
/// uniform random. Throws if the seed length differs from m.
inline std::vector<Individual> init_population(int p, std::size_t m,
                                               const Chromosome& seed_chrom,
                                               Rng& rng) {
    if (p < 1) throw Error("population must be >= 1");
    if (seed_chrom.size() != m) throw Error("seed chromosome length mismatch");
    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(p));
    pop.push_back({seed_chrom, {}, 0.0});
    for (int j = 1; j < p; ++j) pop.push_back({random_chromosome(m, rng), {}, 0.0});
    return pop;
}

/// Biased per-allele crossover: each key comes from the elite parent with
/// probability rho_e, otherwise from the other parent.
inline Chromosome crossover(const Chromosome& elite, const Chromosome& other,
                            double rho_e, Rng& rng) {
    if (elite.size() != other.size()) throw Error("crossover length mismatch");
    std::vector<double> keys(elite.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        keys[i] = rng.uniform01() < rho_e ? elite.keys[i] : other.keys[i];
    return Chromosome(std::move(keys));
}

namespace detail {

template <Decoder D>
void decode_into(Individual& ind, const D& decoder) {
    Decoded d = decoder.decode(ind.chromosome);
    ind.solution = std::move(d.resources);
    ind.fitness = d.fitness;
}

inline void sort_by_fitness(std::vector<Individual>& pop) {
    // stable: fitness ties keep insertion order, so elite membership is
    // deterministic
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) {
                         return a.fitness < b.fitness;
                     });
}

} // namespace detail

/// One generation step. `pop` must be decoded and sorted ascending by
/// fitness. The next generation keeps the elite individuals, adds fresh
/// random mutants, and fills the rest with crossover children whose elite
/// parent is drawn uniformly from the elite set and whose other parent is
/// drawn uniformly from the non-elite set. All draws happen on the single
/// rng stream before any decoding, then new chromosomes are decoded.
/// elite + mutants == population is allowed (no children); > is an error.
template <Decoder D>
std::vector<Individual> evolve_generation(const std::vector<Individual>& pop,
                                          const D& decoder,
                                          const BrkgaParams& params, Rng& rng) {
    const int p = static_cast<int>(pop.size());
    const int pe = params.elite;
    const int pm = params.mutants;
    if (pe < 1 || pe > p) throw Error("elite count out of range");
    if (pm < 0 || pe + pm > p) throw Error("elite + mutants exceeds population");

    const std::size_t m = pop.front().chromosome.size();
    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(p));
    for (int j = 0; j < pe; ++j) next.push_back(pop[j]);
    for (int j = 0; j < pm; ++j) next.push_back({random_chromosome(m, rng), {}, 0.0});
    for (int j = 0; j < p - pe - pm; ++j) {
        const auto& elite = pop[rng.below(static_cast<std::uint32_t>(pe))];
        const auto& other = pop[pe + rng.below(static_cast<std::uint32_t>(p - pe))];
        next.push_back(
            {crossover(elite.chromosome, other.chromosome, params.elite_prob, rng),
             {},
             0.0});
    }
    for (int j = pe; j < p; ++j) detail::decode_into(next[j], decoder);
    detail::sort_by_fitness(next);
    return next;
}

struct Result {
    Chromosome best_chromosome;
    std::vector<EdgeId> best_solution;
    double best_fitness = 0.0;
};

/// Full run: seed the initial population with `seed_chrom`, evolve for
/// params.generations generations, return the best individual ever decoded.
/// Deterministic given (decoder, seed chromosome, params, rng seed).
template <Decoder D>
Result brkga_run(const D& decoder, std::size_t m, const Chromosome& seed_chrom,
                 const BrkgaParams& params, Rng& rng) {
    if (params.generations < 1) throw Error("generations must be >= 1");
    auto pop = init_population(params.population, m, seed_chrom, rng);
    for (auto& ind : pop) detail::decode_into(ind, decoder);
    detail::sort_by_fitness(pop);

    Result best{pop.front().chromosome, pop.front().solution, pop.front().fitness};
    for (int gen = 1; gen < params.generations; ++gen) {
        pop = evolve_generation(pop, decoder, params, rng);
        if (pop.front().fitness < best.best_fitness)
            best = {pop.front().chromosome, pop.front().solution, pop.front().fitness};
    }
    return best;
}

} // namespace sstp::brkga
