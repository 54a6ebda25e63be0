#pragma once

#include <cmath>
#include <optional>

#include "sstp/error.hpp"

namespace sstp {

/// Control parameters of the two-stage solver main loop. Defaults are the
/// tuned values used for the large benchmark runs.
struct SolverParams {
    double alpha = 0.7;           // cost perturbation intensity, in (0,1]
    double min_improve = 0.001;   // minimum relative improvement that counts
    int max_since_best = 3;       // iterations allowed without a new best
    int max_since_improve = 2;    // iterations allowed without any improvement
    int tail_factor = 3;          // generation multiplier for the tail pass
    std::optional<double> time_limit_seconds;

    void validate() const {
        if (!(alpha > 0.0) || alpha > 1.0) throw Error("alpha must be in (0,1]");
        if (min_improve < 0.0) throw Error("min_improve must be >= 0");
        if (max_since_best < 0) throw Error("max_since_best must be >= 0");
        if (max_since_improve < 0) throw Error("max_since_improve must be >= 0");
        if (tail_factor < 1) throw Error("tail_factor must be >= 1");
        if (time_limit_seconds && *time_limit_seconds < 0.0)
            throw Error("time limit must be >= 0");
    }
};

/// Biased random-key GA parameters. Defaults: population 25, elite
/// ceil(0.1 p), mutants ceil(0.2 p), elite crossover probability 0.4,
/// 25 generations.
struct BrkgaParams {
    int population = 25;
    int elite = 3;
    int mutants = 5;
    double elite_prob = 0.4;
    int generations = 25;

    /// Strict configuration check used at the solver/CLI boundary. The
    /// engine itself tolerates degenerate populations (see evolve_generation).
    void validate() const {
        if (population < 3) throw Error("population must be >= 3");
        if (elite < 1) throw Error("elite count must be >= 1");
        if (mutants < 0) throw Error("mutant count must be >= 0");
        if (elite + mutants >= population)
            throw Error("elite + mutants must be < population");
        if (!(elite_prob > 0.0 && elite_prob < 1.0))
            throw Error("elite crossover probability must be in (0,1)");
        if (generations < 1) throw Error("generations must be >= 1");
    }

    /// Population plus elite/mutant fractions, rounded up.
    static BrkgaParams from_fractions(int population, double elite_frac,
                                      double mutant_frac, double elite_prob,
                                      int generations) {
        BrkgaParams p;
        p.population = population;
        p.elite = static_cast<int>(std::ceil(elite_frac * population));
        p.mutants = static_cast<int>(std::ceil(mutant_frac * population));
        p.elite_prob = elite_prob;
        p.generations = generations;
        return p;
    }
};

} // namespace sstp
